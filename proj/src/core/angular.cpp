#include "core/angular.hpp"

#include "core/bump.hpp"
#include "core/diag.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_legendre.h>

#include <Eigen/Dense>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dwl::angular {

using grid::Space;

// ---------------------------------------------------------------------------
// basis

SphericalHarmonicBasis::SphericalHarmonicBasis(int max_degree)
    : max_degree_(max_degree) {
    if (max_degree < 0 || max_degree > 32)
        throw std::invalid_argument("SphericalHarmonicBasis: degree must be in [0,32]");
    int n = max_degree + 1;
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    quad_.cos_theta.resize(n);
    quad_.theta_weight.resize(n);
    for (int i = 0; i < n; ++i) {
        double x, w;
        gsl_integration_glfixed_point(-1.0, 1.0, i, &x, &w, t);
        quad_.cos_theta[i] = x;
        quad_.theta_weight[i] = w;
    }
    gsl_integration_glfixed_table_free(t);
    quad_.n_phi = 2 * max_degree + 2;
}

namespace {

// scratch for GSL Legendre arrays, one per thread
struct LegendreScratch {
    std::vector<double> plm, dplm, cosm, sinm;
    void ensure(int lmax) {
        std::size_t need = gsl_sf_legendre_array_n(lmax);
        if (plm.size() < need) {
            plm.resize(need);
            dplm.resize(need);
        }
        if (cosm.size() < static_cast<std::size_t>(lmax + 1)) {
            cosm.resize(lmax + 1);
            sinm.resize(lmax + 1);
        }
    }
};

LegendreScratch& scratch() {
    thread_local LegendreScratch s;
    return s;
}

void trig_multiples(double cphi, double sphi, int mmax, std::vector<double>& cosm,
                    std::vector<double>& sinm) {
    cosm[0] = 1.0;
    sinm[0] = 0.0;
    for (int m = 1; m <= mmax; ++m) {
        cosm[m] = cosm[m - 1] * cphi - sinm[m - 1] * sphi;
        sinm[m] = sinm[m - 1] * cphi + cosm[m - 1] * sphi;
    }
}

constexpr double kSqrt2 = 1.4142135623730951;

} // namespace

void SphericalHarmonicBasis::eval_all(const std::array<double, 3>& dir,
                                      std::vector<double>& out) const {
    out.assign(size(), 0.0);
    auto& s = scratch();
    s.ensure(max_degree_);
    double ct = std::clamp(dir[2], -1.0, 1.0);
    double st = std::hypot(dir[0], dir[1]);
    gsl_sf_legendre_array(GSL_SF_LEGENDRE_SPHARM, max_degree_, ct, s.plm.data());
    double cphi = st > 0.0 ? dir[0] / st : 1.0;
    double sphi = st > 0.0 ? dir[1] / st : 0.0;
    trig_multiples(cphi, sphi, max_degree_, s.cosm, s.sinm);
    for (int l = 0; l <= max_degree_; ++l) {
        out[flat_index(l, 0)] = s.plm[gsl_sf_legendre_array_index(l, 0)];
        for (int m = 1; m <= l; ++m) {
            double p = s.plm[gsl_sf_legendre_array_index(l, m)];
            out[flat_index(l, 2 * m - 1)] = kSqrt2 * p * s.cosm[m];
            out[flat_index(l, 2 * m)] = kSqrt2 * p * s.sinm[m];
        }
    }
}

double SphericalHarmonicBasis::eval(int l, int n, const std::array<double, 3>& dir) const {
    std::vector<double> tmp;
    eval_all(dir, tmp);
    return tmp[flat_index(l, n)];
}

double SphericalHarmonicBasis::dirichlet_form(int la, int na, int lb, int nb) const {
    auto branch = [](int n) { return n == 0 ? 0 : (n % 2 == 1 ? 1 : 2); };
    auto order = [](int n) { return n == 0 ? 0 : (n + 1) / 2; };
    int ma = order(na), mb = order(nb);
    if (ma != mb || branch(na) != branch(nb)) return 0.0;
    const int m = ma;
    double phi_val = m == 0 ? 2.0 * M_PI : M_PI;   // int trig_a trig_b dphi
    double phi_der = m == 0 ? 0.0 : M_PI;          // int trig_a' trig_b' dphi / m^2
    double norm = (m == 0 ? 1.0 : kSqrt2);
    norm *= norm;

    auto& s = scratch();
    s.ensure(std::max(la, lb));
    double acc_theta = 0.0, acc_phi = 0.0;
    for (std::size_t i = 0; i < quad_.cos_theta.size(); ++i) {
        double x = quad_.cos_theta[i];
        double st2 = 1.0 - x * x;
        gsl_sf_legendre_deriv_array(GSL_SF_LEGENDRE_SPHARM, std::max(la, lb), x,
                                    s.plm.data(), s.dplm.data());
        double pa = s.plm[gsl_sf_legendre_array_index(la, m)];
        double pb = s.plm[gsl_sf_legendre_array_index(lb, m)];
        double da = s.dplm[gsl_sf_legendre_array_index(la, m)];
        double db = s.dplm[gsl_sf_legendre_array_index(lb, m)];
        // d_theta P(cos theta) = -sin(theta) dP/dx, so the theta part carries
        // sin^2(theta) = 1 - x^2
        acc_theta += quad_.theta_weight[i] * st2 * da * db;
        if (m > 0) acc_phi += quad_.theta_weight[i] * pa * pb / st2;
    }
    return norm * (acc_theta * phi_val + acc_phi * phi_der * m * m);
}

// ---------------------------------------------------------------------------
// profiles and synthesis

double RadialProfile::eval(double r, int l) const {
    double g = std::exp(-r * r / (2.0 * width * width));
    if (kind == Kind::gaussian) return g;
    return std::pow(r, l) * g;
}

std::string RadialProfile::id() const {
    return (kind == Kind::gaussian ? "gaussian(w=" : "solid_gaussian(w=") +
           std::to_string(width) + ")";
}

int AngularSpectrum::max_degree() const {
    int l = 0;
    for (const auto& e : entries) l = std::max(l, e.l);
    return l;
}

std::string AngularSpectrum::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : entries) {
        j.push_back({{"l", e.l},
                     {"n", e.n},
                     {"coeff_re", e.coeff.real()},
                     {"coeff_im", e.coeff.imag()},
                     {"radial_profile_id",
                      e.profile.kind == RadialProfile::Kind::gaussian ? "gaussian"
                                                                      : "solid_gaussian"},
                     {"params", {{"width", e.profile.width}}}});
    }
    return j.dump(2);
}

AngularSpectrum AngularSpectrum::from_json(const std::string& text) {
    AngularSpectrum out;
    auto j = nlohmann::json::parse(text);
    for (const auto& item : j) {
        SpectrumEntry e;
        e.l = item.at("l").get<int>();
        e.n = item.at("n").get<int>();
        e.coeff = cplx(item.at("coeff_re").get<double>(), item.at("coeff_im").get<double>());
        std::string kind = item.at("radial_profile_id").get<std::string>();
        e.profile.kind = kind == "gaussian" ? RadialProfile::Kind::gaussian
                                            : RadialProfile::Kind::solid_gaussian;
        e.profile.width = item.at("params").at("width").get<double>();
        out.entries.push_back(e);
    }
    return out;
}

Field synthesize(const AngularSpectrum& spec, const GridSpec& g) {
    Field out = grid::make_scalar(g, Space::physical);
    if (spec.entries.empty()) return out;
    int lmax = spec.max_degree();
    if (lmax > g.points_per_axis / 4)
        throw std::invalid_argument(
            "synthesize: max degree exceeds the l <= M/4 resolution guideline");
    SphericalHarmonicBasis basis(lmax);
    std::vector<double> y;
    const int M = g.points_per_axis;
    std::int64_t idx = 0;
    for (int ix = 0; ix < M; ++ix) {
        double x = g.coord_of_index(ix);
        for (int iy = 0; iy < M; ++iy) {
            double yy = g.coord_of_index(iy);
            for (int iz = 0; iz < M; ++iz, ++idx) {
                double z = g.coord_of_index(iz);
                double r = std::sqrt(x * x + yy * yy + z * z);
                cplx val(0.0);
                if (r == 0.0) {
                    for (const auto& e : spec.entries)
                        if (e.l == 0)
                            val += e.coeff * e.profile.eval(0.0, 0) / std::sqrt(4.0 * M_PI);
                } else {
                    basis.eval_all({x / r, yy / r, z / r}, y);
                    for (const auto& e : spec.entries)
                        val += e.coeff * e.profile.eval(r, e.l) *
                               y[SphericalHarmonicBasis::flat_index(e.l, e.n)];
                }
                out.values[idx] = val;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// shells

std::shared_ptr<const ShellTable> ShellTable::get(const GridSpec& g) {
    static std::mutex m;
    static std::map<std::pair<double, int>, std::shared_ptr<const ShellTable>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(g.half_period, g.points_per_axis);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::shared_ptr<const ShellTable>(new ShellTable(g));
    cache[key] = table;
    return table;
}

ShellTable::ShellTable(const GridSpec& g) : grid_(g) {
    std::map<std::int64_t, std::size_t> by_k2;
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        std::int64_t k2 = std::int64_t(kx) * kx + std::int64_t(ky) * ky + std::int64_t(kz) * kz;
        auto it = by_k2.find(k2);
        if (it == by_k2.end()) {
            it = by_k2.emplace(k2, shells_.size()).first;
            Shell s;
            s.k2 = k2;
            s.radius = g.freq_spacing() * std::sqrt(static_cast<double>(k2));
            shells_.push_back(std::move(s));
        }
        Shell& s = shells_[it->second];
        s.modes.push_back(idx);
        if (k2 == 0) {
            s.dirs.push_back({0.0, 0.0, 1.0});
        } else {
            double inv = 1.0 / std::sqrt(static_cast<double>(k2));
            s.dirs.push_back({kx * inv, ky * inv, kz * inv});
        }
    });
    // sort by radius so iteration order is deterministic
    std::vector<std::size_t> order(shells_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return shells_[a].k2 < shells_[b].k2; });
    std::vector<Shell> sorted;
    sorted.reserve(shells_.size());
    for (auto i : order) sorted.push_back(std::move(shells_[i]));
    shells_ = std::move(sorted);
    capability_.assign(shells_.size(), {-1, -1});
}

int ShellTable::capable_degree(int shell_index, int requested) const {
    const Shell& s = shells_[shell_index];
    const int npts = static_cast<int>(s.modes.size());
    int hard = static_cast<int>(std::floor(std::sqrt(static_cast<double>(npts)))) - 1;
    if (s.k2 == 0) return 0;
    int want = std::min(requested, hard);
    if (want <= 0) return std::max(0, want);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto [tested, good] = capability_[shell_index];
        if (tested >= want) return std::min(good, requested);
    }
    // Build the Gram matrix at the largest candidate degree and walk nested
    // leading blocks down until the sampled basis passes the conditioning
    // margin; interlacing makes the good set downward closed. Eigenvalues in
    // [1-m, 1+m] keep the least-squares attribution exact to rounding and
    // bound the condition number by (1+m)/(1-m).
    constexpr double kGramMargin = 0.75;
    SphericalHarmonicBasis basis(want);
    const int d = basis.size();
    Eigen::MatrixXd Y(npts, d);
    std::vector<double> ytmp;
    for (int p = 0; p < npts; ++p) {
        basis.eval_all(s.dirs[p], ytmp);
        for (int c = 0; c < d; ++c) Y(p, c) = ytmp[c];
    }
    Eigen::MatrixXd G = (4.0 * M_PI / npts) * (Y.transpose() * Y);
    int good = 0;
    for (int L = want; L >= 1; --L) {
        int dl = (L + 1) * (L + 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G.topLeftCorner(dl, dl));
        double lo = es.eigenvalues().minCoeff();
        double hi = es.eigenvalues().maxCoeff();
        if (lo >= 1.0 - kGramMargin && hi <= 1.0 + kGramMargin) {
            good = L;
            break;
        }
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& entry = capability_[shell_index];
        if (requested > entry.first) entry = {requested, good};
    }
    return std::min(good, requested);
}

// ---------------------------------------------------------------------------
// analysis and degree weighting

namespace {

struct ShellSolve {
    Eigen::MatrixXd Y;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    int degree = -1;
};

void build_shell_solve(const Shell& s, int degree, ShellSolve& out) {
    SphericalHarmonicBasis basis(degree);
    const int npts = static_cast<int>(s.modes.size());
    const int d = basis.size();
    out.Y.resize(npts, d);
    std::vector<double> ytmp;
    for (int p = 0; p < npts; ++p) {
        basis.eval_all(s.dirs[p], ytmp);
        for (int c = 0; c < d; ++c) out.Y(p, c) = ytmp[c];
    }
    out.ldlt.compute(out.Y.transpose() * out.Y);
    out.degree = degree;
}

void fit_shell(const ShellSolve& sv, const Shell& s, const Field& fhat, int component,
               ShellFit& fit) {
    const int npts = static_cast<int>(s.modes.size());
    const cplx* data = fhat.comp(component);
    Eigen::VectorXd fr(npts), fi(npts);
    for (int p = 0; p < npts; ++p) {
        cplx v = data[s.modes[p]];
        fr(p) = v.real();
        fi(p) = v.imag();
    }
    Eigen::VectorXd cr = sv.ldlt.solve(sv.Y.transpose() * fr);
    Eigen::VectorXd ci = sv.ldlt.solve(sv.Y.transpose() * fi);
    fit.degree = sv.degree;
    fit.coeff.resize(cr.size());
    for (int c = 0; c < cr.size(); ++c) fit.coeff[c] = cplx(cr(c), ci(c));
    Eigen::VectorXd rr = fr - sv.Y * cr;
    Eigen::VectorXd ri = fi - sv.Y * ci;
    fit.residual_sq = rr.squaredNorm() + ri.squaredNorm();
}

} // namespace

AnalysisResult analyze_component(const Field& fhat, int component, int max_degree) {
    if (fhat.space != Space::frequency)
        throw std::invalid_argument("analyze_component: expects a frequency-space field");
    auto table = ShellTable::get(fhat.grid);
    AnalysisResult res;
    double resid_sq = 0.0, total_sq = 0.0;
    const cplx* data = fhat.comp(component);
    for (std::size_t si = 0; si < table->shells().size(); ++si) {
        const Shell& s = table->shells()[si];
        double shell_sq = 0.0;
        for (auto m : s.modes) shell_sq += std::norm(data[m]);
        total_sq += shell_sq;
        if (shell_sq == 0.0) continue;
        int deg = table->capable_degree(static_cast<int>(si), max_degree);
        ShellSolve sv;
        build_shell_solve(s, deg, sv);
        ShellFit fit;
        fit.shell_index = static_cast<int>(si);
        fit_shell(sv, s, fhat, component, fit);
        resid_sq += fit.residual_sq;
        res.fits.push_back(std::move(fit));
    }
    res.residual = std::sqrt(resid_sq);
    res.total = std::sqrt(total_sq);
    return res;
}

Field apply_degree_weight(const Field& f, int max_degree,
                          const std::function<double(int)>& weight,
                          double* residual_out) {
    const bool physical = f.space == Space::physical;
    Field work = physical ? grid::fft_forward(f) : f;
    auto table = ShellTable::get(work.grid);
    double resid_sq = 0.0, total_sq = 0.0;
    for (std::size_t si = 0; si < table->shells().size(); ++si) {
        const Shell& s = table->shells()[si];
        double shell_sq = 0.0;
        for (int c = 0; c < work.components; ++c)
            for (auto m : s.modes) shell_sq += std::norm(work.comp(c)[m]);
        total_sq += shell_sq;
        if (shell_sq == 0.0) continue;
        int deg = table->capable_degree(static_cast<int>(si), max_degree);
        ShellSolve sv;
        build_shell_solve(s, deg, sv);
        const int npts = static_cast<int>(s.modes.size());
        for (int c = 0; c < work.components; ++c) {
            ShellFit fit;
            fit_shell(sv, s, work, c, fit);
            resid_sq += fit.residual_sq;
            // weight the degree blocks and resynthesize on the same modes
            Eigen::VectorXd wr(fit.coeff.size()), wi(fit.coeff.size());
            for (int l = 0; l <= fit.degree; ++l) {
                double w = weight(l);
                for (int n = 0; n <= 2 * l; ++n) {
                    int ix = SphericalHarmonicBasis::flat_index(l, n);
                    wr(ix) = w * fit.coeff[ix].real();
                    wi(ix) = w * fit.coeff[ix].imag();
                }
            }
            Eigen::VectorXd vr = sv.Y * wr;
            Eigen::VectorXd vi = sv.Y * wi;
            for (int p = 0; p < npts; ++p)
                work.comp(c)[s.modes[p]] = cplx(vr(p), vi(p));
        }
    }
    if (residual_out)
        *residual_out = total_sq > 0.0 ? std::sqrt(resid_sq / total_sq) : 0.0;
    else if (resid_sq > 1e-12 * total_sq && total_sq > 0.0)
        diag::warn("angular analysis residual " +
                   std::to_string(std::sqrt(resid_sq / total_sq)) +
                   " (ill-conditioned or under-sampled shells)");
    return physical ? grid::fft_inverse(work) : work;
}

int default_analysis_degree(Dyadic N) {
    // cover the weight support (l < 2N) and enough extra degrees that content
    // beyond the weighted range is attributed, not aliased into it
    return std::min(32, std::max(16, 2 * static_cast<int>(N.value())));
}

Field project_HN(const Field& f, Dyadic N, double* residual_out) {
    if (N.exponent < 0) throw std::invalid_argument("project_HN: N must be >= 1");
    const multiplier::Bump& b = multiplier::bump();
    const bool ball = N.exponent == 0;
    double Nv = N.value();
    return apply_degree_weight(
        f, default_analysis_degree(N),
        [&](int l) { return ball ? b.rho1(double(l)) : b.rho(double(l) / Nv); },
        residual_out);
}

Field apply_omega_weight(const Field& f, double sigma, double* residual_out) {
    constexpr int kOmegaDegreeCap = 16;
    return apply_degree_weight(
        f, kOmegaDegreeCap,
        [&](int l) { return std::pow(1.0 + double(l) * (l + 1), 0.5 * sigma); },
        residual_out);
}

// ---------------------------------------------------------------------------
// rotations

Field rotation_apply(const Field& f, int axis_i, int axis_j) {
    if (axis_i < 0 || axis_i > 2 || axis_j < 0 || axis_j > 2 || axis_i == axis_j)
        throw std::invalid_argument("rotation_apply: axes must be distinct in {0,1,2}");
    if (f.space != Space::physical)
        throw std::invalid_argument("rotation_apply: expects a physical-space field");

    // boundary decay check (x-multiplication is only meaningful for decayed data)
    {
        const int M = f.grid.points_per_axis;
        double boundary = 0.0, global = 0.0;
        const std::int64_t n = f.slab();
        for (std::int64_t i = 0; i < n; ++i) global = std::max(global, grid::point_abs(f, i));
        for (int a = 0; a < M; ++a)
            for (int bn = 0; bn < M; ++bn) {
                auto probe = [&](int ix, int iy, int iz) {
                    std::int64_t idx = (static_cast<std::int64_t>(ix) * M + iy) * M + iz;
                    boundary = std::max(boundary, grid::point_abs(f, idx));
                };
                probe(0, a, bn);
                probe(a, 0, bn);
                probe(a, bn, 0);
            }
        if (global > 0.0 && boundary > 1e-8 * global)
            diag::warn("rotation_apply: field has not decayed at the box boundary");
    }

    Field hat = grid::fft_forward(f);
    Field di = hat, dj = hat;
    const double fs = f.grid.freq_spacing();
    grid::for_each_mode(f.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        int k[3] = {kx, ky, kz};
        cplx mi = cplx(0.0, fs * k[axis_i]);
        cplx mj = cplx(0.0, fs * k[axis_j]);
        for (int c = 0; c < f.components; ++c) {
            di.comp(c)[idx] = hat.comp(c)[idx] * mi;
            dj.comp(c)[idx] = hat.comp(c)[idx] * mj;
        }
    });
    Field dif = grid::fft_inverse(di);
    Field djf = grid::fft_inverse(dj);

    Field out(f.grid, f.components, Space::physical);
    const int M = f.grid.points_per_axis;
    std::int64_t idx = 0;
    for (int ix = 0; ix < M; ++ix) {
        double xv = f.grid.coord_of_index(ix);
        for (int iy = 0; iy < M; ++iy) {
            double yv = f.grid.coord_of_index(iy);
            for (int iz = 0; iz < M; ++iz, ++idx) {
                double zv = f.grid.coord_of_index(iz);
                double coords[3] = {xv, yv, zv};
                for (int c = 0; c < f.components; ++c)
                    out.comp(c)[idx] = coords[axis_i] * djf.comp(c)[idx] -
                                       coords[axis_j] * dif.comp(c)[idx];
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// shell synthesis for probes

Field synthesize_on_shells(const GridSpec& g, const ShellSynthesisSpec& spec,
                           std::mt19937_64& rng, int components) {
    auto table = ShellTable::get(g);
    Field out(g, components, Space::frequency);
    out.fill_zero();
    SphericalHarmonicBasis basis(spec.degree);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int nb = 2 * spec.degree + 1;
    std::vector<cplx> coeff(static_cast<std::size_t>(nb) * components);
    if (spec.coefficients) {
        if (static_cast<int>(spec.coefficients->size()) != nb)
            throw std::invalid_argument("synthesize_on_shells: bad coefficient count");
        for (int c = 0; c < components; ++c)
            for (int n = 0; n < nb; ++n)
                coeff[static_cast<std::size_t>(c) * nb + n] = (*spec.coefficients)[n];
    } else
        for (auto& c : coeff) c = cplx(gauss(rng), gauss(rng));
    std::vector<double> y;
    bool placed = false;
    for (std::size_t si = 0; si < table->shells().size(); ++si) {
        const Shell& s = table->shells()[si];
        if (s.k2 == 0 && spec.degree > 0) continue;
        double w = spec.radial_window(s.radius);
        if (w == 0.0) continue;
        if (table->capable_degree(static_cast<int>(si),
                                  spec.degree + spec.capability_margin) <
            spec.degree + spec.capability_margin)
            continue;
        placed = true;
        for (std::size_t p = 0; p < s.modes.size(); ++p) {
            basis.eval_all(s.dirs[p], y);
            for (int c = 0; c < components; ++c) {
                cplx v(0.0);
                for (int n = 0; n < nb; ++n)
                    v += coeff[static_cast<std::size_t>(c) * nb + n] *
                         y[SphericalHarmonicBasis::flat_index(spec.degree, n)];
                out.comp(c)[s.modes[p]] = w * v;
            }
        }
    }
    if (!placed)
        diag::warn("synthesize_on_shells: no capable shell inside the radial window");
    return out;
}

std::vector<cplx> zonal_coefficients(int degree, const std::array<double, 3>& omega0) {
    SphericalHarmonicBasis basis(degree);
    std::vector<double> y;
    basis.eval_all(omega0, y);
    std::vector<cplx> out(2 * degree + 1);
    for (int n = 0; n <= 2 * degree; ++n)
        out[n] = cplx(y[SphericalHarmonicBasis::flat_index(degree, n)], 0.0);
    return out;
}

report::ProbeReport concentration_probe(const ConcentrationParams& p) {
    diag::Collector warnings;
    report::ProbeReport rep;
    rep.probe = "concentration";
    rep.params = {{"lambda", p.lambda}, {"p", p.p},       {"s", p.s},
                  {"M", double(p.grid_m)}, {"L", p.grid_l}, {"trials", double(p.trials)}};
    rep.environment = {{"rho", multiplier::Bump::id()},
                       {"seed", std::to_string(p.seed)}};
    GridSpec g(p.grid_l, p.grid_m);
    multiplier::Dyadic lam = multiplier::Dyadic::from_value(p.lambda);
    std::mt19937_64 rng(p.seed);

    std::vector<std::pair<double, double>> samples;
    for (const auto& [alpha, n_deg] : p.alpha_n_pairs) {
        if (alpha * p.lambda < 1.0)
            diag::warn("concentration_probe: alpha below 1/lambda, caps thinner than "
                       "the lattice angular spread");
        multiplier::CapCollection caps(alpha);
        ShellSynthesisSpec spec;
        spec.degree = n_deg <= 1 ? 0 : n_deg;
        spec.capability_margin = 0;
        spec.radial_window = [&](double r) {
            return multiplier::annulus_weight(r, lam, false);
        };
        auto eval_ratio = [&](const Field& data) {
            double denom = grid::lebesgue_norm(grid::fft_inverse(data), p.p);
            if (denom == 0.0) return 0.0;
            double best = 0.0;
            for (int kappa = 0; kappa < caps.size(); ++kappa) {
                Field piece = grid::fft_inverse(project_cap(data, caps, kappa));
                best = std::max(best, grid::lebesgue_norm(piece, p.p));
            }
            return best / (std::pow(alpha * n_deg, p.s) * denom);
        };
        double ratio = 0.0;
        for (int t = 0; t < p.trials; ++t)
            ratio = std::max(ratio, eval_ratio(synthesize_on_shells(g, spec, rng)));
        // zonal concentration witness aligned with a cap center
        {
            ShellSynthesisSpec witness = spec;
            witness.coefficients =
                zonal_coefficients(spec.degree, caps.center(0));
            ratio = std::max(ratio, eval_ratio(synthesize_on_shells(g, witness, rng)));
        }
        rep.samples.push_back(
            {{{"alpha", alpha}, {"N", double(n_deg)}, {"alphaN", alpha * n_deg}},
             ratio});
        if (ratio > 0.0) samples.push_back({alpha * n_deg, ratio});
    }
    rep.fits["alphaN_exponent"] = normbench::fit_exponent(samples);
    rep.warnings = warnings.messages();
    return rep;
}

} // namespace dwl::angular
