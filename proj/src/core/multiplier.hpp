#pragma once
#include "core/bump.hpp"
#include "core/dispersion.hpp"
#include "core/grid.hpp"
#include "core/report.hpp"
#include "core/spacetime.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace dwl::multiplier {

using grid::Field;
using grid::GridSpec;
using grid::SpacetimeField;

// Exact power of two 2^exponent.
struct Dyadic {
    int exponent = 0;

    Dyadic() = default;
    explicit Dyadic(int e) : exponent(e) {}
    double value() const { return std::ldexp(1.0, exponent); }
    static Dyadic from_value(double v); // v must be an exact power of two

    auto operator<=>(const Dyadic&) const = default;
};

// Littlewood-Paley annulus weight at |xi|. lambda = 1 uses the rho1 ball by
// convention; pass homogeneous = true to force the plain annulus rho(|xi|/l)
// for every scale (the convention used inside homogeneous dyadic sweeps).
double annulus_weight(double abs_xi, Dyadic lambda, bool homogeneous = false);

// P_lambda f. Accepts physical- or frequency-space fields and returns the
// same space. Warns when the annulus support reaches within a factor 2 of
// the Nyquist shell.
Field project_annulus(const Field& f, Dyadic lambda, bool homogeneous = false);

// Finitely overlapping cubes of diameter mu/ratio covering the frequency
// lattice, with a smooth subordinate partition of unity (exact by per-axis
// normalization). Cube centers sit on the lattice side*Z^3.
class CubeCollection {
public:
    CubeCollection(const GridSpec& grid, double mu, double ratio = 4.0);

    double scale() const { return mu_; }
    double side() const { return side_; }
    int size() const { return static_cast<int>(centers_.size()); }
    std::array<double, 3> center(int q) const;

    // Partition weight rho_q(xi) for cube q.
    double weight(int q, double xi_x, double xi_y, double xi_z) const;

    // Cubes whose support could intersect that of cube q (center distance
    // within `factor` support diameters).
    std::vector<int> neighbours(int q, double factor = 2.0) const;

    const GridSpec& gridspec() const { return grid_; }

private:
    friend Field project_cube(const Field&, const CubeCollection&, int);
    GridSpec grid_;
    double mu_ = 0.0;
    double side_ = 0.0; // per-axis bump half-width; support is a 2*side cube
    std::vector<std::array<int, 3>> centers_; // integer multiples of side
    int index_of(const std::array<int, 3>& j) const;
    std::array<int, 3> min_j_{}, max_j_{};
};

Field project_cube(const Field& f, const CubeCollection& cubes, int q);

// Finitely overlapping caps of radius alpha on S^2 with smooth partition
// weights normalized to sum to 1 away from xi = 0 (the zero bin always gets
// weight 0). Centers follow a Fibonacci spiral covering.
class CapCollection {
public:
    explicit CapCollection(double alpha);

    double radius() const { return alpha_; }
    int size() const { return static_cast<int>(centers_.size()); }
    std::array<double, 3> center(int kappa) const { return centers_[kappa]; }

    // Normalized partition weight rho_kappa for direction (x,y,z) (need not
    // be unit length; the zero vector returns 0).
    double weight(int kappa, double x, double y, double z) const;

    // Raw (unnormalized) bump and the normalizing sum, exposed for tests.
    double raw_weight(int kappa, const std::array<double, 3>& dir) const;
    double weight_sum(const std::array<double, 3>& dir) const;

    // Caps whose support overlaps a geodesic ball of radius `spread` about
    // direction dir.
    std::vector<int> caps_near(const std::array<double, 3>& dir, double spread) const;

    int cap_containing(const std::array<double, 3>& dir) const; // nearest center

    // Max coverage gap found at construction (max over probe directions of
    // the distance to the nearest center); kept well below alpha/2.
    double coverage_radius() const { return coverage_radius_; }

private:
    double alpha_;
    double coverage_radius_ = 0.0;
    std::vector<std::array<double, 3>> centers_;
    // z-band buckets for neighbour lookups
    int bands_ = 0;
    std::vector<std::vector<int>> band_members_;
    void build_buckets();
};

// R_kappa f: angular localisation multiplier. Field may be in either space.
// Warns when alpha under-resolves the angular spacing of the lattice at the
// field's dominant radial scale.
Field project_cap(const Field& f, const CapCollection& caps, int kappa);

// Apply a caller-supplied radial symbol w(|xi|) as a Fourier multiplier.
Field apply_radial_symbol(const Field& f, const std::function<double(double)>& w);

// Space-time modulation projection. Acts on a spacetime field by twisting
// each spatial mode to its characteristic frequency (tau -> tau + theta*h(xi)),
// so free waves become time-constant and are handled exactly: the twisted
// time mean is split off, the fluctuation is tapered (smooth roll-off at each
// end) and filtered by rho(|tau'|/d) (single shell) or rho1(|tau'|/d)
// (cumulative, which also passes the mean through untouched).
struct ModulationResult {
    SpacetimeField field;
    // Worst-case relative response of the filter to near-constant twisted
    // content, i.e. the taper's own spectral tail under the selection weights.
    double leakage = 0.0;
};

struct ModulationOptions {
    double taper_fraction = 0.10; // roll-off fraction of the window per end
    DispersionLaw law = DispersionLaw::wave();
};

ModulationResult project_modulation(const SpacetimeField& u, Dyadic d, Sign theta,
                                    const ModulationOptions& opt = {});
ModulationResult project_modulation_cumulative(const SpacetimeField& u, Dyadic d,
                                               Sign theta,
                                               const ModulationOptions& opt = {});

// ||R_kappa P_lambda f||_inf / ||f||_p on random fields, against the
// (lambda^3 alpha^2)^(1/p) volume factor.
struct BernsteinParams {
    std::vector<double> lambda_sweep = {2, 4, 8, 16};
    double alpha = 1.0;
    double p = 2.0;
    int grid_m = 64;
    double grid_l = M_PI;
    int trials = 3;
    std::uint64_t seed = 2026;
};

report::ProbeReport bernstein_probe(const BernsteinParams& p);

} // namespace dwl::multiplier
