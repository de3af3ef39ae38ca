#include "core/multiplier.hpp"

#include "core/diag.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace dwl::multiplier {

using grid::cplx;
using grid::Space;

Dyadic Dyadic::from_value(double v) {
    if (v <= 0.0) throw std::invalid_argument("Dyadic: value must be positive");
    int e = 0;
    double m = std::frexp(v, &e); // v = m * 2^e with m in [0.5,1)
    if (m != 0.5) throw std::invalid_argument("Dyadic: value is not a power of two");
    return Dyadic(e - 1);
}

double annulus_weight(double abs_xi, Dyadic lambda, bool homogeneous) {
    const Bump& b = bump();
    if (!homogeneous && lambda.exponent == 0) return b.rho1(abs_xi);
    return b.rho(abs_xi / lambda.value());
}

namespace {

// Run a real multiplier m(kx,ky,kz) over the frequency side of f, staying in
// f's original space.
template <class Symbol>
Field apply_mode_symbol(const Field& f, Symbol&& symbol) {
    const bool physical = f.space == Space::physical;
    Field work = physical ? grid::fft_forward(f) : f;
    grid::for_each_mode(work.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double w = symbol(kx, ky, kz);
        for (int c = 0; c < work.components; ++c) work.comp(c)[idx] *= w;
    });
    return physical ? grid::fft_inverse(work) : work;
}

double bump_unit(double u) {
    // C-infinity bump supported on (-1,1)
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u2));
}

} // namespace

Field project_annulus(const Field& f, Dyadic lambda, bool homogeneous) {
    const double ny = f.grid.nyquist();
    if (2.0 * lambda.value() > ny)
        diag::warn("project_annulus: scale " + std::to_string(lambda.value()) +
                   " within a factor 2 of the Nyquist shell (support truncation)");
    const double fs = f.grid.freq_spacing();
    return apply_mode_symbol(f, [&](int kx, int ky, int kz) {
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        return annulus_weight(r, lambda, homogeneous);
    });
}

Field apply_radial_symbol(const Field& f, const std::function<double(double)>& w) {
    const double fs = f.grid.freq_spacing();
    return apply_mode_symbol(f, [&](int kx, int ky, int kz) {
        return w(fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz));
    });
}

// ---------------------------------------------------------------------------
// cubes

CubeCollection::CubeCollection(const GridSpec& g, double mu, double ratio)
    : grid_(g), mu_(mu) {
    if (mu <= 0.0 || ratio <= 0.0)
        throw std::invalid_argument("CubeCollection: mu and ratio must be positive");
    // support of one cube is a box of side 2*side_, diameter 2*sqrt(3)*side_
    side_ = mu / (2.0 * std::sqrt(3.0) * ratio);
    const double reach = g.nyquist() + side_;
    int jmax = static_cast<int>(std::ceil(reach / side_));
    min_j_ = {-jmax, -jmax, -jmax};
    max_j_ = {jmax, jmax, jmax};
    centers_.reserve(static_cast<std::size_t>(2 * jmax + 1) * (2 * jmax + 1) *
                     (2 * jmax + 1));
    for (int jx = -jmax; jx <= jmax; ++jx)
        for (int jy = -jmax; jy <= jmax; ++jy)
            for (int jz = -jmax; jz <= jmax; ++jz)
                centers_.push_back({jx, jy, jz});
}

std::array<double, 3> CubeCollection::center(int q) const {
    const auto& j = centers_[q];
    return {side_ * j[0], side_ * j[1], side_ * j[2]};
}

int CubeCollection::index_of(const std::array<int, 3>& j) const {
    int nx = max_j_[0] - min_j_[0] + 1;
    for (int a = 0; a < 3; ++a)
        if (j[a] < min_j_[a] || j[a] > max_j_[a]) return -1;
    return ((j[0] - min_j_[0]) * nx + (j[1] - min_j_[1])) * nx + (j[2] - min_j_[2]);
}

namespace {
// normalized 1-D partition bump: b(x/s - j) / sum_m b(x/s - m)
double axis_partition(double x, double s, int j) {
    double u = x / s;
    double num = bump_unit(u - j);
    if (num == 0.0) return 0.0;
    double den = 0.0;
    int lo = static_cast<int>(std::floor(u));
    for (int m = lo - 1; m <= lo + 2; ++m) den += bump_unit(u - m);
    return num / den;
}
} // namespace

double CubeCollection::weight(int q, double xi_x, double xi_y, double xi_z) const {
    const auto& j = centers_[q];
    double w = axis_partition(xi_x, side_, j[0]);
    if (w == 0.0) return 0.0;
    w *= axis_partition(xi_y, side_, j[1]);
    if (w == 0.0) return 0.0;
    return w * axis_partition(xi_z, side_, j[2]);
}

std::vector<int> CubeCollection::neighbours(int q, double factor) const {
    // support boxes of side 2*side_ touch when centers differ by < 2*side_;
    // widen by `factor` in lattice steps
    int span = std::max(2, static_cast<int>(std::ceil(2.0 * factor)));
    std::vector<int> out;
    const auto& j = centers_[q];
    for (int dx = -span; dx <= span; ++dx)
        for (int dy = -span; dy <= span; ++dy)
            for (int dz = -span; dz <= span; ++dz) {
                int idx = index_of({j[0] + dx, j[1] + dy, j[2] + dz});
                if (idx >= 0) out.push_back(idx);
            }
    return out;
}

Field project_cube(const Field& f, const CubeCollection& cubes, int q) {
    if (!(f.grid == cubes.gridspec()))
        throw std::invalid_argument("project_cube: grid mismatch");
    const double fs = f.grid.freq_spacing();
    return apply_mode_symbol(f, [&](int kx, int ky, int kz) {
        return cubes.weight(q, fs * kx, fs * ky, fs * kz);
    });
}

// ---------------------------------------------------------------------------
// caps

namespace {
double geodesic_angle(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    double cx = a[1] * b[2] - a[2] * b[1];
    double cy = a[2] * b[0] - a[0] * b[2];
    double cz = a[0] * b[1] - a[1] * b[0];
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

std::vector<std::array<double, 3>> fibonacci_sphere(int n) {
    std::vector<std::array<double, 3>> pts(n);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / n;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden * i;
        pts[i] = {r * std::cos(phi), r * std::sin(phi), z};
    }
    return pts;
}
} // namespace

CapCollection::CapCollection(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("CapCollection: radius must lie in (0,1]");
    // Start near 23/alpha^2 centers and grow until the covering radius is at
    // most 0.45*alpha, so the partition denominator stays safely positive.
    int n = std::max(16, static_cast<int>(std::ceil(23.0 / (alpha * alpha))));
    auto probes = fibonacci_sphere(4 * n + 17);
    for (int attempt = 0; attempt < 12; ++attempt) {
        centers_ = fibonacci_sphere(n);
        build_buckets();
        double worst = 0.0;
        for (const auto& p : probes) {
            double best = M_PI;
            for (int kappa : caps_near(p, alpha))
                best = std::min(best, geodesic_angle(p, centers_[kappa]));
            worst = std::max(worst, best);
        }
        coverage_radius_ = worst;
        if (worst <= 0.45 * alpha) return;
        n = static_cast<int>(n * 1.3) + 1;
        probes = fibonacci_sphere(4 * n + 17);
    }
    throw std::runtime_error("CapCollection: failed to reach covering radius");
}

void CapCollection::build_buckets() {
    bands_ = std::max(4, static_cast<int>(std::ceil(M_PI / (0.5 * alpha_))));
    band_members_.assign(bands_, {});
    for (int i = 0; i < size(); ++i) {
        double theta = std::acos(std::clamp(centers_[i][2], -1.0, 1.0));
        int b = std::min(bands_ - 1, static_cast<int>(theta / M_PI * bands_));
        band_members_[b].push_back(i);
    }
}

std::vector<int> CapCollection::caps_near(const std::array<double, 3>& dir,
                                          double spread) const {
    double theta = std::acos(std::clamp(dir[2], -1.0, 1.0));
    double reach = alpha_ + spread;
    int lo = std::max(0, static_cast<int>((theta - reach) / M_PI * bands_) - 1);
    int hi = std::min(bands_ - 1, static_cast<int>((theta + reach) / M_PI * bands_) + 1);
    std::vector<int> out;
    for (int b = lo; b <= hi; ++b)
        for (int kappa : band_members_[b])
            if (geodesic_angle(dir, centers_[kappa]) < reach) out.push_back(kappa);
    return out;
}

int CapCollection::cap_containing(const std::array<double, 3>& dir) const {
    int best = 0;
    double best_angle = M_PI;
    for (int i = 0; i < size(); ++i) {
        double a = geodesic_angle(dir, centers_[i]);
        if (a < best_angle) {
            best_angle = a;
            best = i;
        }
    }
    return best;
}

double CapCollection::raw_weight(int kappa, const std::array<double, 3>& dir) const {
    double a = geodesic_angle(dir, centers_[kappa]);
    return bump_unit(a / alpha_);
}

double CapCollection::weight_sum(const std::array<double, 3>& dir) const {
    double s = 0.0;
    for (int kappa : caps_near(dir, 0.0)) s += raw_weight(kappa, dir);
    return s;
}

double CapCollection::weight(int kappa, double x, double y, double z) const {
    double n = std::sqrt(x * x + y * y + z * z);
    if (n == 0.0) return 0.0;
    std::array<double, 3> dir = {x / n, y / n, z / n};
    double raw = raw_weight(kappa, dir);
    if (raw == 0.0) return 0.0;
    return raw / weight_sum(dir);
}

Field project_cap(const Field& f, const CapCollection& caps, int kappa) {
    const bool physical = f.space == Space::physical;
    Field work = physical ? grid::fft_forward(f) : f;
    // resolution check: the cap should span at least one lattice direction at
    // the dominant radial scale of the field
    double num = 0.0, den = 0.0;
    const double fs = work.grid.freq_spacing();
    grid::for_each_mode(work.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double a2 = 0.0;
        for (int c = 0; c < work.components; ++c) a2 += std::norm(work.comp(c)[idx]);
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        num += a2 * r;
        den += a2;
        double w = caps.weight(kappa, double(kx), double(ky), double(kz));
        for (int c = 0; c < work.components; ++c) work.comp(c)[idx] *= w;
    });
    if (den > 0.0) {
        double rbar = num / den;
        if (rbar > 0.0 && caps.radius() < fs / rbar)
            diag::warn("project_cap: cap radius under-resolves the angular lattice "
                       "spacing at the dominant scale");
    }
    return physical ? grid::fft_inverse(work) : work;
}

// ---------------------------------------------------------------------------
// modulation

namespace {

class Plan1dCache {
public:
    fftw_plan get(int K, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(K, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> tmp(K);
        auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan plan = fftw_plan_dft_1d(K, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw 1d planning failed");
        plans_[key] = plan;
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

Plan1dCache& plan1d() {
    static Plan1dCache c;
    return c;
}

std::vector<double> make_taper(int K, double fraction) {
    std::vector<double> w(K);
    for (int k = 0; k < K; ++k) {
        double t = (k + 0.5) / K;
        w[k] = Bump::smoothstep(t / fraction) * Bump::smoothstep((1.0 - t) / fraction);
    }
    return w;
}

int signed_bin(int j, int K) { return j <= K / 2 ? j : j - K; }

ModulationResult modulation_impl(const SpacetimeField& u, Dyadic d, Sign theta,
                                 const ModulationOptions& opt, bool cumulative) {
    u.check_consistent();
    const int K = u.sample_count();
    if (K < 3) throw std::invalid_argument("project_modulation: needs >= 3 frames");
    const double period = K * u.time_step;
    const double bin = 2.0 * M_PI / period;
    if (bin > d.value() / 4.0)
        throw std::invalid_argument(
            "project_modulation: window too short to resolve modulation scale d");

    const Bump& b = bump();
    const GridSpec& g = u.gridspec();
    const int ncomp = u.frames.front().components;

    // spatial transform of every frame
    std::vector<Field> hat;
    hat.reserve(K);
    for (const auto& fr : u.frames) hat.push_back(grid::fft_forward(fr));

    const auto taper = make_taper(K, opt.taper_fraction);
    fftw_plan fwd = plan1d().get(K, FFTW_FORWARD);
    fftw_plan bwd = plan1d().get(K, FFTW_BACKWARD);

    // selection weights on the twisted tau lattice; the mean (modulation 0)
    // is split off separately, so the fluctuation filter never touches the
    // zero bin
    std::vector<double> sel(K);
    for (int j = 0; j < K; ++j) {
        double tau = bin * signed_bin(j, K);
        sel[j] = cumulative ? b.rho1(std::abs(tau) / d.value())
                            : b.rho(std::abs(tau) / d.value());
    }
    sel[0] = 0.0;

    // leakage: response of the fluctuation filter to near-constant twisted
    // content, from the taper's own spectrum under the single-shell weights
    double leakage = 0.0;
    {
        std::vector<cplx> wt(taper.begin(), taper.end());
        fftw_execute_dft(fwd, reinterpret_cast<fftw_complex*>(wt.data()),
                         reinterpret_cast<fftw_complex*>(wt.data()));
        double tail = 0.0, total = 0.0;
        for (int j = 0; j < K; ++j) {
            double tau = bin * signed_bin(j, K);
            double s = b.rho(std::abs(tau) / d.value());
            tail += s * s * std::norm(wt[j]);
            total += std::norm(wt[j]);
        }
        leakage = std::sqrt(tail / total);
    }

    const double th = sign_value(theta);
    const double fs = g.freq_spacing();
    std::vector<cplx> series(K), phase(K);
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        double h = opt.law.symbol(fs * std::sqrt(double(kx) * kx + double(ky) * ky +
                                                 double(kz) * kz));
        for (int k = 0; k < K; ++k) {
            double ang = th * h * u.time_of(k);
            phase[k] = cplx(std::cos(ang), std::sin(ang)); // e^{+i theta h t}
        }
        for (int c = 0; c < ncomp; ++c) {
            cplx mean(0.0);
            for (int k = 0; k < K; ++k) {
                series[k] = hat[k].comp(c)[idx] * phase[k];
                mean += series[k];
            }
            mean /= static_cast<double>(K);
            for (int k = 0; k < K; ++k) series[k] = (series[k] - mean) * taper[k];
            fftw_execute_dft(fwd, reinterpret_cast<fftw_complex*>(series.data()),
                             reinterpret_cast<fftw_complex*>(series.data()));
            for (int j = 0; j < K; ++j) series[j] *= sel[j] / static_cast<double>(K);
            fftw_execute_dft(bwd, reinterpret_cast<fftw_complex*>(series.data()),
                             reinterpret_cast<fftw_complex*>(series.data()));
            for (int k = 0; k < K; ++k) {
                cplx val = series[k];
                if (cumulative) val += mean; // constants carry modulation 0
                hat[k].comp(c)[idx] = val * std::conj(phase[k]);
            }
        }
    });

    SpacetimeField out;
    out.time_step = u.time_step;
    out.frames.reserve(K);
    for (auto& fr : hat) out.frames.push_back(grid::fft_inverse(fr));
    return {std::move(out), leakage};
}

} // namespace

ModulationResult project_modulation(const SpacetimeField& u, Dyadic d, Sign theta,
                                    const ModulationOptions& opt) {
    return modulation_impl(u, d, theta, opt, false);
}

ModulationResult project_modulation_cumulative(const SpacetimeField& u, Dyadic d,
                                               Sign theta,
                                               const ModulationOptions& opt) {
    return modulation_impl(u, d, theta, opt, true);
}

report::ProbeReport bernstein_probe(const BernsteinParams& p) {
    diag::Collector warnings;
    report::ProbeReport rep;
    rep.probe = "bernstein";
    rep.params = {{"alpha", p.alpha}, {"p", p.p},       {"M", double(p.grid_m)},
                  {"L", p.grid_l},    {"trials", double(p.trials)}};
    rep.environment = {{"rho", Bump::id()}, {"seed", std::to_string(p.seed)}};
    GridSpec g(p.grid_l, p.grid_m);
    CapCollection caps(p.alpha);
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::pair<double, double>> samples;
    for (double lambda : p.lambda_sweep) {
        Dyadic lam = Dyadic::from_value(lambda);
        double best = 0.0;
        for (int t = 0; t < p.trials; ++t) {
            Field f(g, 1, grid::Space::physical);
            for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
            double denom = grid::lebesgue_norm(f, p.p);
            if (denom == 0.0) continue; // degenerate draw, skip the trial
            Field loc = project_annulus(grid::fft_forward(f), lam, false);
            for (int kappa = 0; kappa < caps.size(); ++kappa) {
                Field piece = grid::fft_inverse(project_cap(loc, caps, kappa));
                best = std::max(best, grid::inf_norm(piece) / denom);
            }
        }
        rep.samples.push_back({{{"lambda", lambda}, {"alpha", p.alpha}}, best});
        if (best > 0.0) samples.push_back({lambda, best});
    }
    rep.fits["lambda_exponent"] = normbench::fit_exponent(samples);
    // the normalized ratio should stay O(1) across the sweep
    double worst = 0.0;
    for (const auto& [lambda, v] : samples)
        worst = std::max(worst, v / std::pow(std::pow(lambda, 3) * p.alpha * p.alpha,
                                             1.0 / p.p));
    rep.params["max_normalized_ratio"] = worst;
    rep.warnings = warnings.messages();
    return rep;
}

} // namespace dwl::multiplier
