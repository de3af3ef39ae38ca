#pragma once
#include "core/grid.hpp"
#include "core/multiplier.hpp"
#include "core/report.hpp"

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace dwl::angular {

using grid::cplx;
using grid::Field;
using grid::GridSpec;
using multiplier::Dyadic;

// Real orthonormal spherical harmonics y_{l,n}, 0 <= n <= 2l, evaluated via
// normalized associated Legendre recurrences. Index layout: n = 0 is m = 0,
// n = 2m-1 the cos(m phi) branch, n = 2m the sin(m phi) branch.
class SphericalHarmonicBasis {
public:
    explicit SphericalHarmonicBasis(int max_degree);

    int max_degree() const { return max_degree_; }
    static int flat_index(int l, int n) { return l * l + n; }
    int size() const { return (max_degree_ + 1) * (max_degree_ + 1); }

    // All basis values at a unit direction, in flat_index order.
    void eval_all(const std::array<double, 3>& dir, std::vector<double>& out) const;
    double eval(int l, int n, const std::array<double, 3>& dir) const;

    // Gauss-Legendre x uniform-phi quadrature over S^2, exact for the basis
    // products. Nodes/weights exposed for verification.
    struct Quadrature {
        std::vector<double> cos_theta, theta_weight; // Gauss-Legendre in cos(theta)
        int n_phi = 0;
    };
    const Quadrature& quadrature() const { return quad_; }

    // <f,g> over S^2 for callables f(dir), g(dir) under the quadrature.
    template <class F, class G>
    double inner(F&& f, G&& g) const {
        double acc = 0.0;
        double wphi = 2.0 * M_PI / quad_.n_phi;
        for (std::size_t i = 0; i < quad_.cos_theta.size(); ++i) {
            double ct = quad_.cos_theta[i];
            double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int j = 0; j < quad_.n_phi; ++j) {
                double phi = (2.0 * M_PI * j) / quad_.n_phi;
                std::array<double, 3> dir = {st * std::cos(phi), st * std::sin(phi), ct};
                acc += quad_.theta_weight[i] * wphi * f(dir) * g(dir);
            }
        }
        return acc;
    }

    // Surface-gradient Dirichlet form <grad y_a, grad y_b> under the
    // quadrature; equals l(l+1) on the diagonal.
    double dirichlet_form(int la, int na, int lb, int nb) const;

private:
    int max_degree_;
    Quadrature quad_;
};

// Radial profile used in synthesis. solid_gaussian is r^l exp(-r^2/2w^2),
// which keeps physical-space synthesis smooth through the origin.
struct RadialProfile {
    enum class Kind { gaussian, solid_gaussian };
    Kind kind = Kind::solid_gaussian;
    double width = 1.0;

    double eval(double r, int l) const;
    std::string id() const;
};

struct SpectrumEntry {
    int l = 0;
    int n = 0;
    cplx coeff;
    RadialProfile profile;
};

struct AngularSpectrum {
    std::vector<SpectrumEntry> entries;
    int max_degree() const;
    std::string to_json() const;
    static AngularSpectrum from_json(const std::string&);
};

// Physical-space synthesis sum_k c_k g_k(|x|) y_k(x/|x|) on the grid.
Field synthesize(const AngularSpectrum& spec, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Frequency-shell angular analysis.
//
// Lattice modes are grouped by the exact integer |k|^2, so every shell lies
// on a true sphere and the angular fit has no radial modelling error. Each
// shell carries the largest degree whose sampled Gram matrix stays well
// conditioned; content beyond that degree cannot be attributed reliably and
// is reported as residual rather than redistributed.
struct Shell {
    std::int64_t k2 = 0;
    double radius = 0.0; // |xi|
    std::vector<std::int64_t> modes;
    std::vector<std::array<double, 3>> dirs;
};

class ShellTable {
public:
    static std::shared_ptr<const ShellTable> get(const GridSpec& g);

    const std::vector<Shell>& shells() const { return shells_; }
    const GridSpec& gridspec() const { return grid_; }

    // Largest degree L such that the Gram matrix of {y_{l,n} : l <= L}
    // sampled on the shell has relative smallest eigenvalue >= 1e-6.
    // Computed lazily, cached per (shell, requested degree).
    int capable_degree(int shell_index, int requested) const;

private:
    explicit ShellTable(const GridSpec& g);
    GridSpec grid_;
    std::vector<Shell> shells_;
    mutable std::vector<std::pair<int, int>> capability_; // (tested_req, result)
    mutable std::mutex mutex_;
};

struct ShellFit {
    int shell_index = -1;
    int degree = -1;                   // fit degree used
    std::vector<cplx> coeff;           // flat (l,n) order, size (degree+1)^2
    double residual_sq = 0.0;          // squared l2 residual on the shell
};

struct AnalysisResult {
    std::vector<ShellFit> fits;      // one per nonempty shell touched
    double residual = 0.0;           // sqrt of total unfitted energy, L2-scaled
    double total = 0.0;              // L2 norm of the analyzed component
};

// Fit one scalar component of a frequency-space field, up to max_degree.
AnalysisResult analyze_component(const Field& fhat, int component, int max_degree);

// Apply w(l) to the angular decomposition of every component. Generic-field
// path: shell-by-shell least squares, weight, resynthesis; unfittable content
// is dropped and accumulated into *residual_out (relative L2) if given.
Field apply_degree_weight(const Field& f, int max_degree,
                          const std::function<double(int)>& weight,
                          double* residual_out = nullptr);

// Spherical Littlewood-Paley projection H_N (N = 2^j >= 1; N = 1 uses the
// rho1 ball in degree).
Field project_HN(const Field& f, Dyadic N, double* residual_out = nullptr);

// Angular regularity weight <Omega>^sigma: multiplies degree-l components by
// (1 + l(l+1))^(sigma/2).
Field apply_omega_weight(const Field& f, double sigma, double* residual_out = nullptr);

// Degree cap used by generic-field analysis paths when none is specified.
int default_analysis_degree(Dyadic N);

// Rotation generator x_i d_j - x_j d_i with spectral derivatives; warns when
// the field has not decayed at the box boundary.
Field rotation_apply(const Field& f, int axis_i, int axis_j);

// ---------------------------------------------------------------------------
// Frequency-side synthesis for probe data: a single pure degree l with a
// radial window, placed only on shells capable of representing degree
// l + margin so later analysis of the data (and of degree-(l+1) images such
// as Dirac projections) is exact. Returns a zero field when no shell in the
// window qualifies.
struct ShellSynthesisSpec {
    int degree = 0;
    int capability_margin = 1;
    std::function<double(double)> radial_window; // weight as a function of |xi|
    // fixed order-coefficients (length 2*degree+1, shared by all components)
    // instead of random draws; zonal concentration witnesses use this
    std::optional<std::vector<cplx>> coefficients;
};

Field synthesize_on_shells(const GridSpec& g, const ShellSynthesisSpec& spec,
                           std::mt19937_64& rng, int components = 1);

// Zonal coefficients concentrating a pure degree at direction omega0 (the
// addition-theorem kernel, the extremal concentration witness).
std::vector<cplx> zonal_coefficients(int degree, const std::array<double, 3>& omega0);

// ---------------------------------------------------------------------------
// probes

// ||R_kappa P_lambda H_N f||_p / ((alpha N)^s ||P_lambda H_N f||_p) over a
// sweep of (alpha, N) pairs with alpha*N <= 1. Random pure-degree data plus a
// zonal concentration witness per sweep point.
struct ConcentrationParams {
    double lambda = 8.0;
    std::vector<std::pair<double, int>> alpha_n_pairs = {
        {1.0 / 8.0, 1}, {1.0 / 8.0, 2}, {1.0 / 8.0, 4}, {1.0 / 8.0, 8}};
    double p = 4.0;
    double s = 0.25;
    int grid_m = 48;
    double grid_l = M_PI;
    int trials = 2;
    std::uint64_t seed = 2026;
};

report::ProbeReport concentration_probe(const ConcentrationParams& p);

} // namespace dwl::angular
