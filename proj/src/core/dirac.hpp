#pragma once
#include "core/dispersion.hpp"
#include "core/grid.hpp"
#include "core/multiplier.hpp"

#include <Eigen/Dense>

#include <memory>

namespace dwl::dirac {

using grid::Field;
using grid::GridSpec;

using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;

// Dirac representation gamma matrices and Pauli blocks.
struct GammaSet {
    Matrix4 gamma0, gamma1, gamma2, gamma3;
    std::array<Matrix2, 3> pauli;

    const Matrix4& gamma(int mu) const;
    static const GammaSet& instance();

private:
    GammaSet();
};

// Energy-branch projections Pi_theta(xi) = (I + theta (xi.gamma0 gamma + m
// gamma0)/<xi>_m)/2 tabulated over the frequency lattice. Hermiticity and
// trace 2 are asserted at construction.
class DiracProjectorField {
public:
    DiracProjectorField(const GridSpec& g, double mass, Sign theta);

    const GridSpec& gridspec() const { return grid_; }
    double mass() const { return mass_; }
    Sign sign() const { return theta_; }
    const Matrix4& matrix(std::int64_t mode_index) const { return table_[mode_index]; }

    // shared, cached per (grid, mass, theta)
    static std::shared_ptr<const DiracProjectorField> get(const GridSpec& g, double mass,
                                                          Sign theta);

private:
    GridSpec grid_;
    double mass_;
    Sign theta_;
    std::vector<Matrix4> table_;
};

// Closed-form symbol at a single frequency, shared by the tabulation and the
// tests' by-hand comparisons.
Matrix4 projector_symbol(const std::array<double, 3>& xi, double mass, Sign theta);

// Frequency-side application of the 4x4 symbol per lattice point. Accepts a
// spinor field in either space and returns the same space.
Field apply_projector(const Field& psi, const DiracProjectorField& proj);

// Max over trials of ||H_N Pi_theta H_N' psi|| / ||psi|| for synthesized
// spinors with pure degree content matched to N'; separated N, N' should
// produce zero up to analysis accuracy.
struct OrthogonalityReport {
    double max_ratio = 0.0;
    double scalar_control = 0.0; // same separation without the projector
    int trials = 0;
};

OrthogonalityReport dirac_orthogonality_check(const GridSpec& g, multiplier::Dyadic N,
                                              multiplier::Dyadic Nprime, Sign theta,
                                              double mass, int trials,
                                              std::uint64_t seed);

} // namespace dwl::dirac
