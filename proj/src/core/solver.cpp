#include "core/solver.hpp"

#include "core/angular.hpp"
#include "core/diag.hpp"
#include "core/dirac.hpp"
#include "core/multiplier.hpp"

#include <cmath>
#include <random>

namespace dwl::solver {

using grid::cplx;
using grid::Space;
using multiplier::annulus_weight;
using multiplier::Dyadic;

namespace {

Field random_bump_data(const GridSpec& g, double scale, std::mt19937_64& rng,
                       int components) {
    Field out(g, components, Space::frequency);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double fs = g.freq_spacing();
    Dyadic lam = Dyadic::from_value(scale);
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        double w = annulus_weight(r, lam, false);
        for (int c = 0; c < components; ++c)
            out.comp(c)[idx] = w == 0.0 ? cplx(0.0) : w * cplx(gauss(rng), gauss(rng));
    });
    return out;
}

void rescale_to(Field& f, double target) {
    double n = grid::l2_norm(f);
    if (n > 0.0) grid::scale(f, cplx(target / n, 0.0));
}

// frequency-space frame of the free evolution plus i * accumulated Duhamel
Field assemble_frame(const Field& free_hat, const Field& acc) {
    Field out = free_hat;
    grid::axpy(out, cplx(0.0, 1.0), acc);
    return out;
}

struct ThetaState {
    Field data_hat;       // initial data, frequency space
    Field acc;            // Duhamel accumulator
    Field prev_forcing;   // F(t_{k-1}), frequency space
    std::vector<cplx> step; // e^{-theta i dt h}
};

} // namespace

propagator::WaveDataPair make_wave_data(const PicardConfig& cfg) {
    GridSpec g(cfg.grid_l, cfg.grid_m);
    std::mt19937_64 rng(cfg.seed);
    Field u0 = random_bump_data(g, cfg.data_scale, rng, 1);
    Field u1 = random_bump_data(g, cfg.data_scale, rng, 1);
    rescale_to(u0, cfg.epsilon);
    rescale_to(u1, cfg.epsilon);
    return {u0, u1};
}

Field make_dirac_data(const PicardConfig& cfg) {
    GridSpec g(cfg.grid_l, cfg.grid_m);
    std::mt19937_64 rng(cfg.seed);
    Field psi0 = random_bump_data(g, cfg.data_scale, rng, 4);
    rescale_to(psi0, cfg.epsilon);
    return psi0;
}

namespace {

// Shared Picard driver. rhs(current plus/minus physical frames k) must fill
// the frequency-space forcings for both components.
template <class RhsFn>
void picard_iterate(const PicardConfig& cfg, const DispersionLaw& law,
                    const Field& data_plus_hat, const Field& data_minus_hat,
                    SpacetimeField& plus, SpacetimeField& minus, SolveReport& report,
                    RhsFn&& rhs) {
    const GridSpec g = data_plus_hat.grid;
    const int K = static_cast<int>(std::round(cfg.window / cfg.dt)) + 1;
    const double dt = cfg.window / (K - 1);
    const double fs = g.freq_spacing();
    const int ncomp = data_plus_hat.components;

    std::array<ThetaState, 2> st; // 0: plus, 1: minus
    st[0].data_hat = data_plus_hat;
    st[1].data_hat = data_minus_hat;
    for (int s = 0; s < 2; ++s) {
        double th = s == 0 ? 1.0 : -1.0;
        st[s].step.resize(g.point_count());
        grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
            double h = law.symbol(fs * std::sqrt(double(kx) * kx + double(ky) * ky +
                                                 double(kz) * kz));
            double ang = -th * dt * h;
            st[s].step[idx] = cplx(std::cos(ang), std::sin(ang));
        });
    }

    // iterate 0: free evolution
    auto free_frame = [&](int s, int k) {
        Sign th = s == 0 ? Sign::plus : Sign::minus;
        return propagator::evolve(st[s].data_hat, law, th, dt * k);
    };
    plus.time_step = minus.time_step = dt;
    plus.frames.clear();
    minus.frames.clear();
    plus.frames.reserve(K);
    minus.frames.reserve(K);
    for (int k = 0; k < K; ++k) {
        plus.frames.push_back(grid::fft_inverse(free_frame(0, k)));
        minus.frames.push_back(grid::fft_inverse(free_frame(1, k)));
    }

    report.diff_norms.clear();
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        double diff = 0.0;
        for (int s = 0; s < 2; ++s) {
            st[s].acc = Field(g, ncomp, Space::frequency);
            st[s].acc.fill_zero();
        }
        for (int k = 0; k < K; ++k) {
            auto [f_plus, f_minus] = rhs(plus.frames[k], minus.frames[k]);
            Field* forcing[2] = {&f_plus, &f_minus};
            for (int s = 0; s < 2; ++s) {
                ThetaState& t = st[s];
                if (k > 0) {
                    for (int c = 0; c < ncomp; ++c) {
                        cplx* a = t.acc.comp(c);
                        const cplx* pf = t.prev_forcing.comp(c);
                        const cplx* cf = forcing[s]->comp(c);
                        for (std::int64_t i = 0; i < t.acc.slab(); ++i)
                            a[i] = t.step[i] * (a[i] + 0.5 * dt * pf[i]) +
                                   0.5 * dt * cf[i];
                    }
                }
                t.prev_forcing = std::move(*forcing[s]);
                Field frame = grid::fft_inverse(assemble_frame(free_frame(s, k), t.acc));
                SpacetimeField& hist = s == 0 ? plus : minus;
                // sup-in-time L2 of the update
                double fd = 0.0;
                for (std::size_t i = 0; i < frame.values.size(); ++i)
                    fd += std::norm(frame.values[i] - hist.frames[k].values[i]);
                diff = std::max(diff, std::sqrt(fd * g.cell_volume()));
                hist.frames[k] = std::move(frame);
            }
        }
        report.diff_norms.push_back(diff);
        report.iterations = iter;
        if (diff < cfg.tolerance) break;
    }
    report.contracted = true;
    for (std::size_t i = 1; i < report.diff_norms.size(); ++i)
        if (report.diff_norms[i] >= report.diff_norms[i - 1]) report.contracted = false;
    if (!report.contracted)
        report.warnings.push_back(
            "picard_solve: successive corrections did not decrease monotonically; "
            "data size may be too large for contraction");
}

double omega_weighted_norm(const Field& f) {
    double resid = 0.0;
    Field weighted = angular::apply_omega_weight(f, 1.0, &resid);
    return grid::l2_norm(weighted);
}

} // namespace

PicardSolution picard_solve_wave(const propagator::WaveDataPair& data,
                                 const PicardConfig& cfg, SolveReport& report) {
    diag::Collector warnings;
    PicardSolution sol;
    sol.law = DispersionLaw::wave();
    sol.config = cfg;
    auto half = propagator::halfwave_decompose(data);
    Field p_hat = half.plus.space == Space::frequency ? half.plus
                                                      : grid::fft_forward(half.plus);
    Field m_hat = half.minus.space == Space::frequency ? half.minus
                                                       : grid::fft_forward(half.minus);
    report.omega_weighted_data_norm =
        omega_weighted_norm(data.position.space == Space::frequency
                                ? data.position
                                : grid::fft_forward(data.position));
    picard_iterate(cfg, sol.law, p_hat, m_hat, sol.plus, sol.minus, report,
                   [&](const Field& up, const Field& um) {
                       auto f = nonlinear::wave_rhs(up, um, cfg.kind);
                       Field fp = grid::fft_forward(f.plus);
                       Field fm = grid::fft_forward(f.minus);
                       return std::make_pair(std::move(fp), std::move(fm));
                   });
    report.final_residual = residual_check(sol);
    report.scattering_diffs =
        scattering_diagnostic(sol.plus, sol.law, Sign::plus, cfg.scattering_times);
    for (const auto& w : warnings.messages()) report.warnings.push_back(w);
    return sol;
}

PicardSolution picard_solve_dirac(const Field& psi0, const PicardConfig& cfg,
                                  SolveReport& report) {
    diag::Collector warnings;
    PicardSolution sol;
    sol.law = DispersionLaw::klein_gordon(cfg.mass);
    sol.config = cfg;
    const GridSpec& g = psi0.grid;
    auto proj_plus = dirac::DiracProjectorField::get(g, cfg.mass, Sign::plus);
    auto proj_minus = dirac::DiracProjectorField::get(g, cfg.mass, Sign::minus);
    Field psi_hat = psi0.space == Space::frequency ? psi0 : grid::fft_forward(psi0);
    Field p_hat = dirac::apply_projector(psi_hat, *proj_plus);
    Field m_hat = dirac::apply_projector(psi_hat, *proj_minus);
    report.omega_weighted_data_norm = omega_weighted_norm(psi_hat);

    picard_iterate(
        cfg, sol.law, p_hat, m_hat, sol.plus, sol.minus, report,
        [&](const Field& pp, const Field& pm) {
            Field psi = pp;
            grid::axpy(psi, cplx(1.0, 0.0), pm);
            Field fp = nonlinear::dirac_rhs(psi, cfg.yukawa_b, *proj_plus);
            Field fm = nonlinear::dirac_rhs(psi, cfg.yukawa_b, *proj_minus);
            return std::make_pair(grid::fft_forward(fp), grid::fft_forward(fm));
        });

    report.final_residual = residual_check(sol);
    report.scattering_diffs =
        scattering_diagnostic(sol.plus, sol.law, Sign::plus, cfg.scattering_times);

    // charge drift of the recombined flow
    double base = 0.0, drift = 0.0, pi_inv = 0.0;
    const int K = sol.plus.sample_count();
    for (int k = 0; k < K; ++k) {
        Field psi = sol.plus.frames[k];
        grid::axpy(psi, cplx(1.0, 0.0), sol.minus.frames[k]);
        double n = grid::l2_norm(psi);
        if (k == 0) base = n;
        drift = std::max(drift, std::abs(n - base));
    }
    report.charge_drift = base > 0.0 ? drift / base : 0.0;

    // Pi_theta invariance of the components at a few frames
    for (int k : {0, K / 2, K - 1}) {
        Field wrong_p = dirac::apply_projector(sol.plus.frames[k], *proj_minus);
        Field wrong_m = dirac::apply_projector(sol.minus.frames[k], *proj_plus);
        pi_inv = std::max(pi_inv, std::max(grid::l2_norm(wrong_p), grid::l2_norm(wrong_m)));
    }
    report.pi_invariance = base > 0.0 ? pi_inv / base : 0.0;
    for (const auto& w : warnings.messages()) report.warnings.push_back(w);
    return sol;
}

double residual_vs_forcing(const SpacetimeField& u, const DispersionLaw& law,
                           Sign theta, const SpacetimeField& forcing) {
    u.check_consistent();
    const int K = u.sample_count();
    if (K < 3) throw std::invalid_argument("residual: too few frames");
    const GridSpec& g = u.gridspec();
    const double fs = g.freq_spacing();
    const double th = sign_value(theta);
    double worst = 0.0;
    for (int k = 1; k + 1 < K; ++k) {
        Field du = u.frames[k + 1];
        grid::axpy(du, cplx(-1.0, 0.0), u.frames[k - 1]);
        grid::scale(du, cplx(1.0 / (2.0 * u.time_step), 0.0));
        Field du_hat = du.space == Space::frequency ? du : grid::fft_forward(du);
        Field uk_hat = u.frames[k].space == Space::frequency
                           ? u.frames[k]
                           : grid::fft_forward(u.frames[k]);
        Field f_hat = forcing.frames[k].space == Space::frequency
                          ? forcing.frames[k]
                          : grid::fft_forward(forcing.frames[k]);
        grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
            double h = law.symbol(fs * std::sqrt(double(kx) * kx + double(ky) * ky +
                                                 double(kz) * kz));
            for (int c = 0; c < du_hat.components; ++c)
                du_hat.comp(c)[idx] = cplx(0.0, -1.0) * du_hat.comp(c)[idx] +
                                      th * h * uk_hat.comp(c)[idx] -
                                      f_hat.comp(c)[idx];
        });
        worst = std::max(worst, grid::l2_norm(du_hat));
    }
    return worst;
}

double residual_check(const PicardSolution& sol) {
    const auto& cfg = sol.config;
    const int K = sol.plus.sample_count();
    SpacetimeField f_plus, f_minus;
    f_plus.time_step = f_minus.time_step = sol.plus.time_step;
    f_plus.frames.reserve(K);
    f_minus.frames.reserve(K);
    if (cfg.system == PicardConfig::System::wave_null) {
        for (int k = 0; k < K; ++k) {
            auto f = nonlinear::wave_rhs(sol.plus.frames[k], sol.minus.frames[k], cfg.kind);
            f_plus.frames.push_back(std::move(f.plus));
            f_minus.frames.push_back(std::move(f.minus));
        }
    } else {
        const GridSpec& g = sol.plus.gridspec();
        auto pp = dirac::DiracProjectorField::get(g, cfg.mass, Sign::plus);
        auto pm = dirac::DiracProjectorField::get(g, cfg.mass, Sign::minus);
        for (int k = 0; k < K; ++k) {
            Field psi = sol.plus.frames[k];
            grid::axpy(psi, cplx(1.0, 0.0), sol.minus.frames[k]);
            f_plus.frames.push_back(nonlinear::dirac_rhs(psi, cfg.yukawa_b, *pp));
            f_minus.frames.push_back(nonlinear::dirac_rhs(psi, cfg.yukawa_b, *pm));
        }
    }
    double rp = residual_vs_forcing(sol.plus, sol.law, Sign::plus, f_plus);
    double rm = residual_vs_forcing(sol.minus, sol.law, Sign::minus, f_minus);
    return std::max(rp, rm);
}

std::vector<double> scattering_diagnostic(const SpacetimeField& u_theta,
                                          const DispersionLaw& law, Sign theta,
                                          const std::vector<double>& sample_times) {
    u_theta.check_consistent();
    std::vector<Field> profiles;
    for (double t : sample_times) {
        int k = static_cast<int>(std::round(t / u_theta.time_step));
        if (k < 0 || k >= u_theta.sample_count())
            throw std::invalid_argument("scattering_diagnostic: time outside window");
        // e^{+theta i t h} u(t): undo the free flow
        profiles.push_back(propagator::evolve(u_theta.frames[k], law, theta, -t));
    }
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < profiles.size(); ++i) {
        Field d = profiles[i + 1];
        grid::axpy(d, cplx(-1.0, 0.0), profiles[i]);
        diffs.push_back(grid::l2_norm(d));
    }
    return diffs;
}

} // namespace dwl::solver
