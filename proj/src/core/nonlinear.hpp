#pragma once
#include "core/dirac.hpp"
#include "core/grid.hpp"
#include "core/report.hpp"

#include <cstdint>

namespace dwl::nonlinear {

using grid::Field;
using grid::GridSpec;

struct NullFormKind {
    enum class Tag { qij, q0 } tag = Tag::qij;
    int i = 1, j = 2; // 1 <= i < j <= 3 for qij

    static NullFormKind Qij(int i, int j);
    static NullFormKind Q0() { return {Tag::q0, 0, 0}; }
    std::string name() const;
};

// Zero every mode outside the 2/3-Nyquist shell (|k| > M/3 in index radius),
// so products of band-limited inputs cannot fold back into tested bins.
Field dealias(const Field& f);

// Spectral partial derivative along axis (0,1,2).
Field spectral_derivative(const Field& f, int axis);

// Q_ij(u,v) = d_i u d_j v - d_j u d_i v with spectral derivatives; the
// output is dealiased.
Field null_form_qij(const Field& u, const Field& v, int i, int j);

// Q_0(u,v) = u_t v_t - grad u . grad v; time derivatives are supplied by the
// caller (free-wave probes have them exactly from the symbol).
Field null_form_q0(const Field& u, const Field& u_t, const Field& v, const Field& v_t);

// |nabla|^{-s} with the zero mode removed; the removed mass is reported.
Field inverse_derivative(const Field& f, double s);

// Yukawa potential convolution: multiplier (b^2 + |xi|^2)^{-1}.
Field yukawa_convolve(const Field& f, double b);

// Pi_theta[ V_b * (psi^dagger psi) psi ] for the Dirac-Hartree system.
Field dirac_rhs(const Field& psi, double b, const dirac::DiracProjectorField& proj);

// Pointwise density psi^dagger psi (real, nonnegative) as a scalar field.
Field spinor_density(const Field& psi);

// theta |nabla|^{-2} Q(conj(u), u) for the reduced wave system, assembled
// from the half-wave pair (u = u_+ + u_-, d_t u = -i|nabla|(u_+ - u_-)).
struct WaveForcing {
    Field plus;
    Field minus;
};
WaveForcing wave_rhs(const Field& u_plus, const Field& u_minus, const NullFormKind& kind);

// Angle dependence of ||Q_ij(u,v)|| on single-mode inputs with prescribed
// separation; the un-normalized norm should scale like the angle.
struct NullSymbolParams {
    std::vector<double> angles = {0.5, 0.25, 0.125};
    double mode_radius = 8.0; // |xi| = |eta| in lattice units of pi/L
    // mode sums reach index radius 2*mode_radius and must clear the
    // 2/3-Nyquist dealias shell, so M > 6*mode_radius
    int grid_m = 54;
    double grid_l = M_PI;
    std::uint64_t seed = 2026;
};
report::ProbeReport null_symbol_probe(const NullSymbolParams& p);

} // namespace dwl::nonlinear
