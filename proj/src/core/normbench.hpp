#pragma once
#include "core/dispersion.hpp"
#include "core/grid.hpp"
#include "core/multiplier.hpp"
#include "core/nonlinear.hpp"
#include "core/report.hpp"
#include "core/vnorm.hpp"

#include <cstdint>

namespace dwl::normbench {

using grid::Field;
using grid::GridSpec;
using grid::SpacetimeField;

// ||C_d u||_{L^q_t L^2_x} d^{1/q} / ||u||_{V^2_theta} on step superpositions
// of free waves, swept over the modulation scale d.
struct HighModulationParams {
    std::vector<int> d_bins = {4, 8, 16}; // d as a multiple of 2 pi / (K dt)
    double q = 2.0;
    int frames = 64;
    int grid_m = 32;
    double grid_l = M_PI;
    double data_scale = 4.0; // annulus scale of the step data
    Sign theta = Sign::plus;
    int trials = 3;
    std::uint64_t seed = 2026;
};
report::ProbeReport high_modulation_probe(const HighModulationParams& p);

// Frequency-localised L^2 bilinear estimate for Klein-Gordon waves:
// ||P_l0 (phi1^dag phi2)||_{L^2_t L^2_x} against
// l0 (min/max)^delta (min N)^(1-eta) ||data1|| ||data2||.
struct BilinearParams {
    double lambda_high = 8.0;             // lambda_1 = lambda_2
    std::vector<double> lambda0_sweep = {4.0, 2.0, 1.0};
    std::vector<double> n_sweep = {1.0, 2.0, 4.0};
    double n_fixed = 1.0;
    double eta = 0.05;
    double mass = 1.0;
    double window = 8.0;
    int grid_m = 48;
    double grid_l = M_PI;
    Sign theta1 = Sign::plus, theta2 = Sign::minus;
    int trials = 3;
    std::uint64_t seed = 2026;
};
report::ProbeReport bilinear_probe(const BilinearParams& p);

// Trilinear null-form estimate for the wave system:
// |int w_mu |nabla|^{-2} Q(conj u, v)| against
// (min lambda)^{1/2} (min/max)^delta (min N)^(1-eta) times the data norms.
struct TrilinearParams {
    double lambda_high = 4.0; // lambda_1 = lambda_2
    std::vector<double> mu_sweep = {2.0, 1.0, 0.5};
    nonlinear::NullFormKind kind = nonlinear::NullFormKind::Qij(1, 2);
    double eta = 0.05;
    double window = 8.0;
    int grid_m = 48;
    double grid_l = 2.0 * M_PI;
    Sign theta = Sign::plus, theta1 = Sign::plus, theta2 = Sign::minus;
    int trials = 3;
    bool modulation_split = false; // also report the C_d decomposition pieces
    std::vector<int> split_d_bins = {4, 8};
    std::uint64_t seed = 2026;
};
report::ProbeReport trilinear_probe(const TrilinearParams& p);

} // namespace dwl::normbench
