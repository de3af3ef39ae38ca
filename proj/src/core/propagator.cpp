#include "core/propagator.hpp"

#include "core/angular.hpp"
#include "core/bump.hpp"
#include "core/diag.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dwl::propagator {

using grid::cplx;
using grid::Space;
using multiplier::annulus_weight;

Field evolve(const Field& f, const DispersionLaw& law, Sign theta, double t) {
    const bool physical = f.space == Space::physical;
    Field hat = physical ? grid::fft_forward(f) : f;
    const double fs = f.grid.freq_spacing();
    const double th = sign_value(theta);
    grid::for_each_mode(f.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double h = law.symbol(fs * std::sqrt(double(kx) * kx + double(ky) * ky +
                                             double(kz) * kz));
        double ang = -th * t * h;
        cplx phase(std::cos(ang), std::sin(ang));
        for (int c = 0; c < hat.components; ++c) hat.comp(c)[idx] *= phase;
    });
    return physical ? grid::fft_inverse(hat) : hat;
}

HalfWavePair halfwave_decompose(const WaveDataPair& d) {
    if (!d.position.same_layout(d.velocity))
        throw std::invalid_argument("halfwave_decompose: data on mismatched grids");
    Field u0 = d.position.space == Space::frequency ? d.position
                                                    : grid::fft_forward(d.position);
    Field u1 = d.velocity.space == Space::frequency ? d.velocity
                                                    : grid::fft_forward(d.velocity);
    const double fs = u0.grid.freq_spacing();
    double zero_mass = 0.0;
    for (int c = 0; c < u1.components; ++c) zero_mass += std::norm(u1.comp(c)[0]);
    zero_mass = std::sqrt(zero_mass / std::pow(2.0 * u1.grid.half_period, 3));
    if (zero_mass > 1e-10 * std::max(1e-300, grid::l2_norm(u1)))
        diag::warn("halfwave_decompose: velocity has zero-mode mass " +
                   std::to_string(zero_mass) + "; it is dropped");

    HalfWavePair out{u0, u0};
    grid::for_each_mode(u0.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        for (int c = 0; c < u0.components; ++c) {
            cplx a = u0.comp(c)[idx];
            // (i|xi|)^{-1} u1hat, zero mode dropped
            cplx b = r > 0.0 ? u1.comp(c)[idx] / cplx(0.0, r) : cplx(0.0);
            out.plus.comp(c)[idx] = 0.5 * (a - b);
            out.minus.comp(c)[idx] = 0.5 * (a + b);
        }
    });
    if (d.position.space == Space::physical) {
        out.plus = grid::fft_inverse(out.plus);
        out.minus = grid::fft_inverse(out.minus);
    }
    return out;
}

WaveDataPair halfwave_reconstruct(const HalfWavePair& h) {
    if (!h.plus.same_layout(h.minus))
        throw std::invalid_argument("halfwave_reconstruct: mismatched components");
    const bool physical = h.plus.space == Space::physical;
    Field p = physical ? grid::fft_forward(h.plus) : h.plus;
    Field m = physical ? grid::fft_forward(h.minus) : h.minus;
    WaveDataPair out{p, p};
    const double fs = p.grid.freq_spacing();
    grid::for_each_mode(p.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        for (int c = 0; c < p.components; ++c) {
            cplx a = p.comp(c)[idx], b = m.comp(c)[idx];
            out.position.comp(c)[idx] = a + b;
            out.velocity.comp(c)[idx] = cplx(0.0, -r) * (a - b);
        }
    });
    if (physical) {
        out.position = grid::fft_inverse(out.position);
        out.velocity = grid::fft_inverse(out.velocity);
    }
    return out;
}

SpacetimeField duhamel(const SpacetimeField& F, const DispersionLaw& law, Sign theta) {
    F.check_consistent();
    const int K = F.sample_count();
    if (K < 3) throw std::invalid_argument("duhamel: needs at least 3 frames");
    const double dt = F.time_step;
    const GridSpec& g = F.gridspec();
    const double fs = g.freq_spacing();
    const double th = sign_value(theta);

    // accumulate I(t_{k+1}) = E (I(t_k) + dt/2 Fhat(t_k)) + dt/2 Fhat(t_{k+1})
    // with E = e^{-theta i dt h}, which reproduces the trapezoid rule exactly.
    std::vector<cplx> step(g.point_count());
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        double h = law.symbol(fs * std::sqrt(double(kx) * kx + double(ky) * ky +
                                             double(kz) * kz));
        double ang = -th * dt * h;
        step[idx] = cplx(std::cos(ang), std::sin(ang));
    });

    SpacetimeField out;
    out.time_step = dt;
    out.frames.reserve(K);
    const bool physical = F.frames.front().space == Space::physical;
    Field acc(g, F.frames.front().components, Space::frequency);
    acc.fill_zero();
    Field prev = physical ? grid::fft_forward(F.frames.front()) : F.frames.front();
    out.frames.push_back(physical ? grid::fft_inverse(acc) : acc);
    for (int k = 1; k < K; ++k) {
        Field cur = physical ? grid::fft_forward(F.frames[k]) : F.frames[k];
        for (int c = 0; c < acc.components; ++c) {
            cplx* a = acc.comp(c);
            const cplx* p = prev.comp(c);
            const cplx* q = cur.comp(c);
            for (std::int64_t i = 0; i < acc.slab(); ++i)
                a[i] = step[i] * (a[i] + 0.5 * dt * p[i]) + 0.5 * dt * q[i];
        }
        out.frames.push_back(physical ? grid::fft_inverse(acc) : acc);
        prev = std::move(cur);
    }
    return out;
}

SpacetimeField free_evolution(const Field& data, const DispersionLaw& law, Sign theta,
                              double dt, int frames) {
    Field hat = data.space == Space::frequency ? data : grid::fft_forward(data);
    SpacetimeField out;
    out.time_step = dt;
    out.frames.reserve(frames);
    for (int k = 0; k < frames; ++k) {
        Field fr = evolve(hat, law, theta, dt * k);
        out.frames.push_back(data.space == Space::frequency ? fr : grid::fft_inverse(fr));
    }
    return out;
}

// ---------------------------------------------------------------------------
// probes

namespace {

// (lambda, N)-localized random data built directly on analysis-capable
// frequency shells inside the annulus of scale lambda.
Field localized_data(const GridSpec& g, double lambda, double n_degree,
                     std::mt19937_64& rng, int components = 1) {
    angular::ShellSynthesisSpec spec;
    spec.degree = n_degree <= 1.0 ? 0 : static_cast<int>(n_degree);
    spec.capability_margin = 1;
    spec.radial_window = [lambda](double r) {
        return annulus_weight(r, multiplier::Dyadic::from_value(lambda), false);
    };
    return angular::synthesize_on_shells(g, spec, rng, components);
}

} // namespace

report::ProbeReport strichartz_probe(const StrichartzParams& p) {
    diag::Collector warnings;
    report::ProbeReport rep;
    rep.probe = "strichartz";
    const double q_eta = 4.0 / (1.0 - p.eta);
    if (!(p.eta > 0.0 && p.eta <= 0.1))
        throw std::invalid_argument("strichartz_probe: eta must lie in (0, 1/10]");
    rep.params = {{"eta", p.eta},          {"q_eta", q_eta}, {"T", p.window},
                  {"M", double(p.grid_m)}, {"L", p.grid_l},  {"trials", double(p.trials)}};
    rep.environment = {{"rho", multiplier::Bump::id()},
                       {"law", p.law.name()},
                       {"seed", std::to_string(p.seed)},
                       {"theta", sign_name(p.theta)}};
    GridSpec g(p.grid_l, p.grid_m);
    std::mt19937_64 rng(p.seed);

    auto run_case = [&](double lambda, double n_deg) {
        double best = 0.0;
        // resolve the fastest phase in the annulus
        double dt = std::min(p.window / 32.0, 0.5 / lambda);
        int K = static_cast<int>(std::ceil(p.window / dt)) + 1;
        dt = p.window / (K - 1);
        for (int t = 0; t < p.trials; ++t) {
            Field data = localized_data(g, lambda, n_deg, rng);
            double l2 = grid::l2_norm(data);
            if (l2 == 0.0) continue;
            double acc = 0.0;
            for (int k = 0; k < K; ++k) {
                Field fr = grid::fft_inverse(evolve(data, p.law, p.theta, dt * k));
                double w = (k == 0 || k == K - 1) ? 0.5 : 1.0;
                acc += w * dt * std::pow(grid::lebesgue_norm(fr, q_eta), 2.0);
            }
            best = std::max(best, std::sqrt(acc) / l2);
        }
        return best;
    };

    std::vector<std::pair<double, double>> lam_samples, n_samples;
    for (double lambda : p.lambda_sweep) {
        double ratio = run_case(lambda, p.n_for_lambda_sweep);
        rep.samples.push_back({{{"lambda", lambda}, {"N", p.n_for_lambda_sweep}}, ratio});
        if (ratio > 0.0) lam_samples.push_back({lambda, ratio});
    }
    for (double n : p.n_sweep) {
        double ratio = run_case(p.lambda_for_n_sweep, n);
        rep.samples.push_back({{{"lambda", p.lambda_for_n_sweep}, {"N", n}}, ratio});
        if (ratio > 0.0) n_samples.push_back({n, ratio});
    }
    rep.fits["lambda_exponent"] = normbench::fit_exponent(lam_samples);
    rep.fits["N_exponent"] = normbench::fit_exponent(n_samples);
    rep.warnings = warnings.messages();
    return rep;
}

report::ProbeReport decay_probe(const DecayParams& p) {
    diag::Collector warnings;
    report::ProbeReport rep;
    rep.probe = "decay";
    rep.params = {{"M", double(p.grid_m)}, {"L", p.grid_l}, {"trials", double(p.trials)}};
    rep.environment = {{"rho", multiplier::Bump::id()}, {"seed", std::to_string(p.seed)}};
    GridSpec g(p.grid_l, p.grid_m);
    const auto& b = multiplier::bump();

    std::vector<std::pair<double, double>> samples;
    // radial unit-frequency bump, the P_1 reference datum
    Field data(g, 1, Space::frequency);
    const double fs = g.freq_spacing();
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        data.values[idx] = b.rho1(r) * std::exp(-r * r / (2.0 * p.bump_width * p.bump_width));
    });
    for (double t : p.times) {
        if (t > p.grid_l / 2.0)
            diag::warn("decay_probe: wavefront approaches the box boundary at t = " +
                       std::to_string(t));
        Field fr = grid::fft_inverse(evolve(data, DispersionLaw::wave(), Sign::plus, t));
        double sup = grid::inf_norm(fr);
        rep.samples.push_back({{{"t", t}}, sup});
        if (sup > 0.0) samples.push_back({t, sup});
    }
    rep.fits["decay_exponent"] = normbench::fit_exponent(samples);
    rep.warnings = warnings.messages();
    return rep;
}

double radial_wave_sup_reference(const std::function<double(double)>& ghat,
                                 double rho_max, double t, double s_max, int n_rho,
                                 int n_s) {
    // u(t,x) = (2 pi^2)^{-1} s^{-1} int_0^inf rho ghat(rho) sin(rho s)
    //          e^{-i t rho} drho, with the s -> 0 limit handled separately.
    double best = 0.0;
    const double drho = rho_max / n_rho;
    for (int is = 0; is <= n_s; ++is) {
        double s = s_max * is / n_s;
        double re = 0.0, im = 0.0;
        for (int ir = 0; ir <= n_rho; ++ir) {
            double rho = ir * drho;
            double w = (ir == 0 || ir == n_rho) ? 0.5 : 1.0;
            double radial = s > 0.0 ? std::sin(rho * s) / s : rho;
            double amp = rho * ghat(rho) * radial;
            re += w * amp * std::cos(t * rho) * drho;
            im -= w * amp * std::sin(t * rho) * drho;
        }
        double mag = std::hypot(re, im) / (2.0 * M_PI * M_PI);
        best = std::max(best, mag);
    }
    return best;
}

} // namespace dwl::propagator
