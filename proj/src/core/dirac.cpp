#include "core/dirac.hpp"

#include "core/angular.hpp"
#include "core/bump.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace dwl::dirac {

using grid::cplx;
using grid::Space;

GammaSet::GammaSet() {
    const cplx I(0.0, 1.0);
    pauli[0] << 0, 1, 1, 0;
    pauli[1] << 0, -I, I, 0;
    pauli[2] << 1, 0, 0, -1;
    gamma0.setZero();
    gamma0.block<2, 2>(0, 0) = Matrix2::Identity();
    gamma0.block<2, 2>(2, 2) = -Matrix2::Identity();
    Matrix4* gj[3] = {&gamma1, &gamma2, &gamma3};
    for (int j = 0; j < 3; ++j) {
        gj[j]->setZero();
        gj[j]->block<2, 2>(0, 2) = pauli[j];
        gj[j]->block<2, 2>(2, 0) = -pauli[j];
    }
}

const Matrix4& GammaSet::gamma(int mu) const {
    switch (mu) {
        case 0: return gamma0;
        case 1: return gamma1;
        case 2: return gamma2;
        case 3: return gamma3;
    }
    throw std::invalid_argument("gamma: index must be 0..3");
}

const GammaSet& GammaSet::instance() {
    static GammaSet g;
    return g;
}

Matrix4 projector_symbol(const std::array<double, 3>& xi, double mass, Sign theta) {
    const GammaSet& gs = GammaSet::instance();
    double bracket = std::sqrt(mass * mass + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    Matrix4 a = mass * gs.gamma0;
    for (int j = 0; j < 3; ++j) a += xi[j] * (gs.gamma0 * gs.gamma(j + 1));
    return 0.5 * (Matrix4::Identity() + (sign_value(theta) / bracket) * a);
}

DiracProjectorField::DiracProjectorField(const GridSpec& g, double mass, Sign theta)
    : grid_(g), mass_(mass), theta_(theta) {
    if (mass <= 0.0) throw std::invalid_argument("DiracProjectorField: mass must be > 0");
    table_.resize(g.point_count());
    const double fs = g.freq_spacing();
    double worst_herm = 0.0, worst_trace = 0.0;
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        Matrix4 p = projector_symbol({fs * kx, fs * ky, fs * kz}, mass, theta);
        worst_herm = std::max(worst_herm, (p - p.adjoint()).cwiseAbs().maxCoeff());
        worst_trace = std::max(worst_trace, std::abs(p.trace() - cplx(2.0)));
        table_[idx] = p;
    });
    if (worst_herm > 1e-12 || worst_trace > 1e-12)
        throw std::runtime_error("DiracProjectorField: symbol failed hermiticity/trace check");
}

std::shared_ptr<const DiracProjectorField> DiracProjectorField::get(const GridSpec& g,
                                                                    double mass,
                                                                    Sign theta) {
    static std::mutex m;
    static std::map<std::tuple<double, int, double, int>,
                    std::shared_ptr<const DiracProjectorField>>
        cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_tuple(g.half_period, g.points_per_axis, mass,
                               static_cast<int>(theta));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto proj = std::make_shared<const DiracProjectorField>(g, mass, theta);
    cache[key] = proj;
    return proj;
}

Field apply_projector(const Field& psi, const DiracProjectorField& proj) {
    if (psi.components != 4)
        throw std::invalid_argument("apply_projector: spinor field required");
    if (!(psi.grid == proj.gridspec()))
        throw std::invalid_argument("apply_projector: grid mismatch");
    const bool physical = psi.space == Space::physical;
    Field hat = physical ? grid::fft_forward(psi) : psi;
    const std::int64_t n = hat.slab();
    Eigen::Vector4cd v;
    for (std::int64_t i = 0; i < n; ++i) {
        for (int c = 0; c < 4; ++c) v(c) = hat.comp(c)[i];
        v = proj.matrix(i) * v;
        for (int c = 0; c < 4; ++c) hat.comp(c)[i] = v(c);
    }
    return physical ? grid::fft_inverse(hat) : hat;
}

OrthogonalityReport dirac_orthogonality_check(const GridSpec& g, multiplier::Dyadic N,
                                              multiplier::Dyadic Nprime, Sign theta,
                                              double mass, int trials,
                                              std::uint64_t seed) {
    OrthogonalityReport rep;
    rep.trials = trials;
    if (std::abs(N.exponent - Nprime.exponent) < 2)
        return rep; // the lemma says nothing for N ~ N'

    auto proj = DiracProjectorField::get(g, mass, theta);
    // data of pure degree matched to N', placed on shells that can also
    // represent the degree +/- 1 image of the projector
    int degree = static_cast<int>(Nprime.value());
    if (Nprime.exponent == 0) degree = 0;
    const double ny = g.nyquist();
    angular::ShellSynthesisSpec spec;
    spec.degree = degree;
    spec.capability_margin = 1;
    spec.radial_window = [&](double r) {
        return (r > 0.15 * ny && r < 0.85 * ny) ? 1.0 : 0.0;
    };
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Field psi = angular::synthesize_on_shells(g, spec, rng, 4);
        double base = grid::l2_norm(psi);
        if (base == 0.0) continue;
        Field proj_psi = apply_projector(psi, *proj);
        Field hn = angular::project_HN(proj_psi, N);
        rep.max_ratio = std::max(rep.max_ratio, grid::l2_norm(hn) / base);
        // scalar control: H_N H_N' with the same separation, no projector
        Field hnn = angular::project_HN(psi, N);
        rep.scalar_control = std::max(rep.scalar_control, grid::l2_norm(hnn) / base);
    }
    return rep;
}

} // namespace dwl::dirac
