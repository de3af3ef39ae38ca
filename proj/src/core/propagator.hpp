#pragma once
#include "core/dispersion.hpp"
#include "core/grid.hpp"
#include "core/multiplier.hpp"
#include "core/report.hpp"
#include "core/spacetime.hpp"

#include <cstdint>

namespace dwl::propagator {

using grid::Field;
using grid::GridSpec;
using grid::SpacetimeField;
using multiplier::Dyadic;

// e^{-theta i t h(nabla)} f; unitary on L^2. Works in either space and
// returns the same space.
Field evolve(const Field& f, const DispersionLaw& law, Sign theta, double t);

struct WaveDataPair {
    Field position; // u0
    Field velocity; // u1
};

struct HalfWavePair {
    Field plus;
    Field minus;
};

// u_pm = (u -+ (i|nabla|)^{-1} du/dt)/2. The zero mode of u1 has no preimage
// under |nabla|^{-1}; it is dropped and flagged when its mass exceeds 1e-10.
HalfWavePair halfwave_decompose(const WaveDataPair& d);

// u = u_+ + u_-, du/dt = -i|nabla|(u_+ - u_-).
WaveDataPair halfwave_reconstruct(const HalfWavePair& h);

// Duhamel integral int_0^t e^{-theta i (t-t') h(nabla)} F(t') dt' by
// trapezoid quadrature on the input frames (vanishing data at t = 0).
// i * (this integral) solves (-i d_t + theta h) u = F.
SpacetimeField duhamel(const SpacetimeField& F, const DispersionLaw& law, Sign theta);

// Free evolution of data sampled on K frames over [0, T].
SpacetimeField free_evolution(const Field& data, const DispersionLaw& law, Sign theta,
                              double dt, int frames);

// ---------------------------------------------------------------------------
// probes

struct StrichartzParams {
    std::vector<double> lambda_sweep = {2, 4, 8, 16};
    std::vector<double> n_sweep = {1, 2, 4, 8};
    double lambda_for_n_sweep = 16.0;
    double n_for_lambda_sweep = 1.0;
    double eta = 0.1;
    double window = 8.0;
    int grid_m = 64;
    double grid_l = M_PI;
    int trials = 3;
    DispersionLaw law = DispersionLaw::wave();
    Sign theta = Sign::plus;
    std::uint64_t seed = 2026;
};

// Mixed-norm growth of frequency- and angular-localized free waves against
// lambda^(1-3/q_eta) N^(1/2+eta); fits the lambda and N exponents of the
// per-scale max ratios.
report::ProbeReport strichartz_probe(const StrichartzParams& p);

struct DecayParams {
    std::vector<double> times = {2, 4, 8, 16};
    int grid_m = 128;
    double grid_l = 64.0;
    double bump_width = 1.0;
    int trials = 1;
    std::uint64_t seed = 2026;
};

// sup-norm decay of unit-frequency free waves; the fitted exponent should
// sit near -(n-1)/2 = -1.
report::ProbeReport decay_probe(const DecayParams& p);

// Reference amplitude for radial data via the 1-D oscillatory radial
// integral: u(t,x) = (2 pi^2 s)^{-1} int rho sin(rho s) e^{-i t rho}
// ghat(rho) drho at s = |x|, maximized over a radius grid (test oracle).
double radial_wave_sup_reference(const std::function<double(double)>& ghat,
                                 double rho_max, double t, double s_max, int n_rho,
                                 int n_s);

} // namespace dwl::propagator
