#include "core/nonlinear.hpp"

#include "core/bump.hpp"
#include "core/diag.hpp"

#include <cmath>
#include <stdexcept>

namespace dwl::nonlinear {

using grid::cplx;
using grid::Space;

NullFormKind NullFormKind::Qij(int i, int j) {
    if (!(1 <= i && i < j && j <= 3))
        throw std::invalid_argument("NullFormKind: need 1 <= i < j <= 3");
    return {Tag::qij, i, j};
}

std::string NullFormKind::name() const {
    if (tag == Tag::q0) return "Q0";
    return "Q" + std::to_string(i) + std::to_string(j);
}

Field dealias(const Field& f) {
    const bool physical = f.space == Space::physical;
    Field hat = physical ? grid::fft_forward(f) : f;
    const double cut = f.grid.points_per_axis / 3.0;
    const double cut2 = cut * cut;
    grid::for_each_mode(hat.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 > cut2)
            for (int c = 0; c < hat.components; ++c) hat.comp(c)[idx] = cplx(0.0);
    });
    return physical ? grid::fft_inverse(hat) : hat;
}

Field spectral_derivative(const Field& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("spectral_derivative: axis");
    const bool physical = f.space == Space::physical;
    Field hat = physical ? grid::fft_forward(f) : f;
    const double fs = f.grid.freq_spacing();
    grid::for_each_mode(hat.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        int k[3] = {kx, ky, kz};
        cplx m(0.0, fs * k[axis]);
        for (int c = 0; c < hat.components; ++c) hat.comp(c)[idx] *= m;
    });
    return physical ? grid::fft_inverse(hat) : hat;
}

namespace {

Field to_physical(const Field& f) {
    return f.space == Space::physical ? f : grid::fft_inverse(f);
}

Field pointwise_product(const Field& a, const Field& b) {
    Field out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

} // namespace

Field null_form_qij(const Field& u, const Field& v, int i, int j) {
    if (!u.same_layout(v)) throw std::invalid_argument("null_form: grid mismatch");
    NullFormKind::Qij(i, j); // validates indices
    Field ui = to_physical(spectral_derivative(u, i - 1));
    Field uj = to_physical(spectral_derivative(u, j - 1));
    Field vi = to_physical(spectral_derivative(v, i - 1));
    Field vj = to_physical(spectral_derivative(v, j - 1));
    Field out = pointwise_product(ui, vj);
    const Field cross = pointwise_product(uj, vi);
    for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t] -= cross.values[t];
    return dealias(out);
}

Field null_form_q0(const Field& u, const Field& u_t, const Field& v, const Field& v_t) {
    if (!u.same_layout(v) || !u.same_layout(u_t) || !u.same_layout(v_t))
        throw std::invalid_argument("null_form_q0: grid mismatch");
    Field out = pointwise_product(to_physical(u_t), to_physical(v_t));
    for (int axis = 0; axis < 3; ++axis) {
        Field da = to_physical(spectral_derivative(u, axis));
        Field db = to_physical(spectral_derivative(v, axis));
        const Field prod = pointwise_product(da, db);
        for (std::size_t t = 0; t < out.values.size(); ++t)
            out.values[t] -= prod.values[t];
    }
    return dealias(out);
}

Field inverse_derivative(const Field& f, double s) {
    const bool physical = f.space == Space::physical;
    Field hat = physical ? grid::fft_forward(f) : f;
    const double fs = f.grid.freq_spacing();
    double removed = 0.0;
    for (int c = 0; c < hat.components; ++c) {
        removed += std::norm(hat.comp(c)[0]);
        hat.comp(c)[0] = cplx(0.0);
    }
    removed = std::sqrt(removed / std::pow(2.0 * f.grid.half_period, 3));
    if (removed > 0.0)
        diag::warn("inverse_derivative: removed zero-mode mass " + std::to_string(removed));
    grid::for_each_mode(hat.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        if (idx == 0) return;
        double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        double m = std::pow(r, -s);
        for (int c = 0; c < hat.components; ++c) hat.comp(c)[idx] *= m;
    });
    return physical ? grid::fft_inverse(hat) : hat;
}

Field yukawa_convolve(const Field& f, double b) {
    if (b <= 0.0) throw std::invalid_argument("yukawa_convolve: b must be positive");
    const bool physical = f.space == Space::physical;
    Field hat = physical ? grid::fft_forward(f) : f;
    const double fs = f.grid.freq_spacing();
    grid::for_each_mode(hat.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
        double r2 = fs * fs * (double(kx) * kx + double(ky) * ky + double(kz) * kz);
        double m = 1.0 / (b * b + r2);
        for (int c = 0; c < hat.components; ++c) hat.comp(c)[idx] *= m;
    });
    return physical ? grid::fft_inverse(hat) : hat;
}

Field spinor_density(const Field& psi) {
    if (psi.components != 4)
        throw std::invalid_argument("spinor_density: spinor field required");
    Field phys = to_physical(psi);
    Field out(psi.grid, 1, Space::physical);
    const std::int64_t n = out.slab();
    for (std::int64_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += std::norm(phys.comp(c)[t]);
        out.values[t] = cplx(acc, 0.0);
    }
    return out;
}

Field dirac_rhs(const Field& psi, double b, const dirac::DiracProjectorField& proj) {
    if (!(psi.grid == proj.gridspec()))
        throw std::invalid_argument("dirac_rhs: grid mismatch");
    Field phys = to_physical(psi);
    Field potential = yukawa_convolve(spinor_density(phys), b);
    Field out = phys;
    const std::int64_t n = phys.slab();
    for (int c = 0; c < 4; ++c)
        for (std::int64_t t = 0; t < n; ++t)
            out.comp(c)[t] = potential.values[t] * phys.comp(c)[t];
    out = dealias(out);
    return dirac::apply_projector(out, proj);
}

WaveForcing wave_rhs(const Field& u_plus, const Field& u_minus,
                     const NullFormKind& kind) {
    if (!u_plus.same_layout(u_minus))
        throw std::invalid_argument("wave_rhs: half-waves on mismatched grids");
    Field u = to_physical(u_plus);
    {
        const Field um = to_physical(u_minus);
        for (std::size_t t = 0; t < u.values.size(); ++t) u.values[t] += um.values[t];
    }
    Field ubar = u;
    for (auto& v : ubar.values) v = std::conj(v);

    Field q(u.grid, u.components, Space::physical);
    if (kind.tag == NullFormKind::Tag::qij) {
        q = null_form_qij(ubar, u, kind.i, kind.j);
    } else {
        // d_t u = -i|nabla|(u_+ - u_-) from the half-wave structure
        Field diff_hat = grid::fft_forward(to_physical(u_plus));
        const Field mhat = grid::fft_forward(to_physical(u_minus));
        const double fs = u.grid.freq_spacing();
        grid::for_each_mode(u.grid, [&](std::int64_t idx, int kx, int ky, int kz) {
            double r = fs * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
            for (int c = 0; c < diff_hat.components; ++c)
                diff_hat.comp(c)[idx] =
                    cplx(0.0, -r) * (diff_hat.comp(c)[idx] - mhat.comp(c)[idx]);
        });
        Field ut = grid::fft_inverse(diff_hat);
        Field ubar_t = ut;
        for (auto& v : ubar_t.values) v = std::conj(v);
        q = null_form_q0(ubar, ubar_t, u, ut);
    }
    Field base = inverse_derivative(q, 2.0);
    WaveForcing out{base, base};
    for (auto& v : out.minus.values) v = -v;
    return out;
}

report::ProbeReport null_symbol_probe(const NullSymbolParams& p) {
    diag::Collector warnings;
    report::ProbeReport rep;
    rep.probe = "null_symbol";
    rep.params = {{"mode_radius", p.mode_radius},
                  {"M", double(p.grid_m)},
                  {"L", p.grid_l}};
    rep.environment = {{"rho", multiplier::Bump::id()}, {"seed", std::to_string(p.seed)}};
    GridSpec g(p.grid_l, p.grid_m);

    auto mode_field = [&](int kx, int ky, int kz) {
        Field f(g, 1, Space::frequency);
        f.fill_zero();
        // e^{i x.xi} has a single frequency bin of weight (2L)^3
        const int M = g.points_per_axis;
        auto wrap = [M](int k) { return (k % M + M) % M; };
        std::int64_t idx =
            (static_cast<std::int64_t>(wrap(kx)) * M + wrap(ky)) * M + wrap(kz);
        f.values[idx] = std::pow(2.0 * g.half_period, 3);
        return grid::fft_inverse(f);
    };

    std::vector<std::pair<double, double>> samples;
    const double r = p.mode_radius;
    for (double target : p.angles) {
        int ex = static_cast<int>(std::round(r * std::cos(target)));
        int ey = static_cast<int>(std::round(r * std::sin(target)));
        double achieved = std::atan2(double(ey), double(ex));
        if (achieved <= 0.0) {
            diag::warn("null_symbol_probe: angle too small for the lattice, skipped");
            continue;
        }
        Field u = mode_field(static_cast<int>(r), 0, 0);
        Field v = mode_field(ex, ey, 0);
        Field q = null_form_qij(u, v, 1, 2);
        double value = grid::l2_norm(q);
        rep.samples.push_back(
            {{{"angle", achieved}, {"target_angle", target}}, value});
        if (value > 0.0) samples.push_back({achieved, value});
    }
    rep.fits["angle_exponent"] = normbench::fit_exponent(samples);
    rep.warnings = warnings.messages();
    return rep;
}

} // namespace dwl::nonlinear
