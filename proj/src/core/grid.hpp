#pragma once
#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace dwl::grid {

using cplx = std::complex<double>;

// Periodic box [-L,L)^3 sampled with M points per axis. The frequency lattice
// is (pi/L)*{-M/2,...,M/2-1}^3; symbols are always evaluated from the integer
// triple k and the exact factor pi/L so multiplier supports never drift.
struct GridSpec {
    double half_period = 0.0; // L
    int points_per_axis = 0;  // M, even, >= 8

    GridSpec() = default;
    GridSpec(double L, int M);

    std::int64_t point_count() const {
        auto m = static_cast<std::int64_t>(points_per_axis);
        return m * m * m;
    }
    double cell_volume() const {
        double h = 2.0 * half_period / points_per_axis;
        return h * h * h;
    }
    double spacing() const { return 2.0 * half_period / points_per_axis; }
    double freq_spacing() const; // pi/L
    double nyquist() const;      // pi*M/(2L), largest resolved |xi_i|

    // integer frequency index along one axis for storage index j in [0,M)
    int k_of_index(int j) const {
        return j < points_per_axis / 2 ? j : j - points_per_axis;
    }
    double coord_of_index(int j) const { return -half_period + j * spacing(); }

    bool operator==(const GridSpec& o) const {
        return half_period == o.half_period && points_per_axis == o.points_per_axis;
    }
};

enum class Space { physical, frequency };

// Complex field on a grid, 1 component (scalar) or 4 (spinor). Components are
// stored planar: component c occupies the slab [c*M^3, (c+1)*M^3). Within a
// slab the layout is row-major x,y,z (z fastest).
struct Field {
    GridSpec grid;
    int components = 1;
    Space space = Space::physical;
    std::vector<cplx> values;

    Field() = default;
    Field(const GridSpec& g, int ncomp, Space s = Space::physical);

    std::int64_t slab() const { return grid.point_count(); }
    cplx* comp(int c) { return values.data() + c * slab(); }
    const cplx* comp(int c) const { return values.data() + c * slab(); }

    cplx& at(int c, int ix, int iy, int iz) {
        int M = grid.points_per_axis;
        return values[c * slab() + (static_cast<std::int64_t>(ix) * M + iy) * M + iz];
    }
    const cplx& at(int c, int ix, int iy, int iz) const {
        int M = grid.points_per_axis;
        return values[c * slab() + (static_cast<std::int64_t>(ix) * M + iy) * M + iz];
    }

    void fill_zero();
    bool same_layout(const Field& o) const {
        return grid == o.grid && components == o.components;
    }
};

Field make_scalar(const GridSpec& g, Space s = Space::physical);
Field make_spinor(const GridSpec& g, Space s = Space::physical);

// Forward transform: approximates fhat(xi) = \int exp(-i x.xi) f dx, i.e. the
// DFT scaled by the cell volume (with the phase from the box origin at -L).
Field fft_forward(const Field& f);
// Exact discrete inverse of fft_forward.
Field fft_inverse(const Field& fhat);

// Iterate the frequency lattice: calls fn(linear_index, kx, ky, kz) over one
// component slab. The same linear index addresses every component.
template <class Fn>
void for_each_mode(const GridSpec& g, Fn&& fn) {
    const int M = g.points_per_axis;
    std::int64_t idx = 0;
    for (int ix = 0; ix < M; ++ix) {
        int kx = g.k_of_index(ix);
        for (int iy = 0; iy < M; ++iy) {
            int ky = g.k_of_index(iy);
            for (int iz = 0; iz < M; ++iz, ++idx) {
                fn(idx, kx, ky, g.k_of_index(iz));
            }
        }
    }
}

// (sum |f|^p cell_volume)^(1/p); p=inf gives the max. Spinors use the C^4
// Euclidean magnitude pointwise. Requires a physical-space field.
double lebesgue_norm(const Field& f, double p);

// L2 norm valid in either space (frequency side uses the Plancherel scaling).
double l2_norm(const Field& f);

double inf_norm(const Field& f);

// Pointwise magnitude across components at linear index i.
double point_abs(const Field& f, std::int64_t i);

Field& axpy(Field& y, cplx a, const Field& x); // y += a*x
Field& scale(Field& y, cplx a);

} // namespace dwl::grid
