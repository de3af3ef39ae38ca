#include "core/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dwl::grid {

GridSpec::GridSpec(double L, int M) : half_period(L), points_per_axis(M) {
    if (L <= 0.0) throw std::invalid_argument("GridSpec: half_period must be positive");
    if (M < 8 || M % 2 != 0) throw std::invalid_argument("GridSpec: M must be even and >= 8");
}

double GridSpec::freq_spacing() const { return M_PI / half_period; }

double GridSpec::nyquist() const { return M_PI * points_per_axis / (2.0 * half_period); }

Field::Field(const GridSpec& g, int ncomp, Space s)
    : grid(g), components(ncomp), space(s), values(g.point_count() * ncomp) {
    if (ncomp != 1 && ncomp != 4)
        throw std::invalid_argument("Field: component count must be 1 or 4");
}

void Field::fill_zero() { std::fill(values.begin(), values.end(), cplx(0.0)); }

Field make_scalar(const GridSpec& g, Space s) { return Field(g, 1, s); }
Field make_spinor(const GridSpec& g, Space s) { return Field(g, 4, s); }

namespace {

// Plans are cached per (M, direction) and reused through the new-array
// interface. FFTW_UNALIGNED keeps new-array execution valid for arbitrary
// vectors; FFTW_ESTIMATE keeps planning deterministic.
class PlanCache {
public:
    fftw_plan get(int M, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(M, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> tmp(static_cast<std::size_t>(M) * M * M);
        auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan plan = fftw_plan_dft_3d(M, M, M, p, p, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw planning failed");
        plans_[key] = plan;
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void execute(fftw_plan plan, cplx* data) {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

// The grid origin sits at -L, so the continuum phase differs from the DFT
// phase by (-1)^(kx+ky+kz). Applying it is an involution shared by both
// directions.
void apply_origin_phase(Field& f) {
    for_each_mode(f.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        if ((kx + ky + kz) & 1) {
            for (int c = 0; c < f.components; ++c) f.comp(c)[idx] = -f.comp(c)[idx];
        }
    });
}

} // namespace

Field fft_forward(const Field& f) {
    if (f.space != Space::physical)
        throw std::invalid_argument("fft_forward: field already in frequency space");
    Field out = f;
    out.space = Space::frequency;
    fftw_plan plan = plan_cache().get(f.grid.points_per_axis, FFTW_FORWARD);
    const double scale_factor = f.grid.cell_volume();
    for (int c = 0; c < out.components; ++c) execute(plan, out.comp(c));
    apply_origin_phase(out);
    for (auto& v : out.values) v *= scale_factor;
    return out;
}

Field fft_inverse(const Field& fhat) {
    if (fhat.space != Space::frequency)
        throw std::invalid_argument("fft_inverse: field not in frequency space");
    Field out = fhat;
    out.space = Space::physical;
    apply_origin_phase(out);
    fftw_plan plan = plan_cache().get(fhat.grid.points_per_axis, FFTW_BACKWARD);
    for (int c = 0; c < out.components; ++c) execute(plan, out.comp(c));
    const double scale_factor =
        1.0 / (fhat.grid.cell_volume() * static_cast<double>(fhat.grid.point_count()));
    for (auto& v : out.values) v *= scale_factor;
    return out;
}

double point_abs(const Field& f, std::int64_t i) {
    if (f.components == 1) return std::abs(f.values[i]);
    double s = 0.0;
    for (int c = 0; c < f.components; ++c) s += std::norm(f.comp(c)[i]);
    return std::sqrt(s);
}

double lebesgue_norm(const Field& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lebesgue_norm: exponent must be >= 1");
    if (f.space != Space::physical)
        throw std::invalid_argument("lebesgue_norm: expects a physical-space field");
    const std::int64_t n = f.slab();
    if (std::isinf(p)) return inf_norm(f);
    double acc = 0.0;
    if (p == 2.0) {
        for (std::int64_t i = 0; i < n; ++i)
            for (int c = 0; c < f.components; ++c) acc += std::norm(f.comp(c)[i]);
    } else {
        for (std::int64_t i = 0; i < n; ++i) acc += std::pow(point_abs(f, i), p);
    }
    return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    if (f.space == Space::physical) return std::sqrt(acc * f.grid.cell_volume());
    // Plancherel: ||f||_2^2 = (2pi)^-3 sum |fhat|^2 (pi/L)^3
    double vol = std::pow(2.0 * f.grid.half_period, 3);
    return std::sqrt(acc / vol);
}

double inf_norm(const Field& f) {
    double best = 0.0;
    const std::int64_t n = f.slab();
    for (std::int64_t i = 0; i < n; ++i) best = std::max(best, point_abs(f, i));
    return best;
}

Field& axpy(Field& y, cplx a, const Field& x) {
    if (!y.same_layout(x)) throw std::invalid_argument("axpy: layout mismatch");
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
    return y;
}

Field& scale(Field& y, cplx a) {
    for (auto& v : y.values) v *= a;
    return y;
}

} // namespace dwl::grid
