#include "core/angular.hpp"

#include "core/diag.hpp"
#include "core/multiplier.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dwl;
using angular::AngularSpectrum;
using angular::RadialProfile;
using angular::SphericalHarmonicBasis;
using grid::cplx;
using grid::Field;
using grid::GridSpec;
using grid::Space;
using multiplier::Dyadic;

namespace {

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

AngularSpectrum single_entry(int l, int n, double width = 1.0) {
    AngularSpectrum spec;
    spec.entries.push_back(
        {l, n, cplx(1.0, 0.0), {RadialProfile::Kind::solid_gaussian, width}});
    return spec;
}

} // namespace

TEST_CASE("basis orthonormality under the quadrature") {
    SphericalHarmonicBasis basis(8);
    std::vector<double> ya, yb;
    for (int a = 0; a < basis.size(); ++a) {
        for (int b = a; b < basis.size(); ++b) {
            double ip = basis.inner(
                [&](const std::array<double, 3>& d) {
                    basis.eval_all(d, ya);
                    return ya[a];
                },
                [&](const std::array<double, 3>& d) {
                    basis.eval_all(d, yb);
                    return yb[b];
                });
            CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("Laplace-Beltrami eigenvalues through the Dirichlet form") {
    SphericalHarmonicBasis basis(6);
    for (int l = 0; l <= 6; ++l)
        for (int n = 0; n <= 2 * l; ++n) {
            double d = basis.dirichlet_form(l, n, l, n);
            CHECK(std::abs(d - l * (l + 1.0)) < 1e-8 * std::max(1.0, l * (l + 1.0)));
        }
    CHECK(std::abs(basis.dirichlet_form(2, 1, 4, 1)) < 1e-8);
    CHECK(std::abs(basis.dirichlet_form(3, 0, 5, 0)) < 1e-8);
}

TEST_CASE("synthesis basics") {
    GridSpec g(6.0, 24);
    SUBCASE("empty spectrum gives the zero field") {
        Field f = angular::synthesize({}, g);
        CHECK(grid::l2_norm(f) == 0.0);
    }
    SUBCASE("l = 0 entry gives a radial field") {
        Field f = angular::synthesize(single_entry(0, 0), g);
        const int M = g.points_per_axis;
        auto at = [&](int ix, int iy, int iz) {
            return f.values[(static_cast<std::int64_t>(ix) * M + iy) * M + iz];
        };
        for (int i = 1; i < M / 2; ++i) {
            CHECK(std::abs(at(M / 2 + i, M / 2, M / 2) - at(M / 2, M / 2 + i, M / 2)) <
                  1e-12);
            CHECK(std::abs(at(M / 2 + i, M / 2, M / 2) - at(M / 2 - i, M / 2, M / 2)) <
                  1e-12);
        }
    }
    SUBCASE("degree beyond the resolution guideline is rejected") {
        CHECK_THROWS(angular::synthesize(single_entry(9, 0), g)); // M/4 = 6
    }
    SUBCASE("spectrum JSON round trip") {
        AngularSpectrum spec = single_entry(3, 2, 0.7);
        spec.entries.push_back(
            {1, 0, cplx(0.5, -0.25), {RadialProfile::Kind::gaussian, 2.0}});
        AngularSpectrum back = AngularSpectrum::from_json(spec.to_json());
        REQUIRE(back.entries.size() == 2);
        CHECK(back.entries[0].l == 3);
        CHECK(back.entries[0].n == 2);
        CHECK(back.entries[0].profile.width == 0.7);
        CHECK(back.entries[1].coeff == cplx(0.5, -0.25));
        CHECK(back.max_degree() == 3);
    }
}

TEST_CASE("H_N on radial and pure-degree synthesized fields") {
    GridSpec g(M_PI, 24);
    SUBCASE("radial field: H_1 f = f, H_4 f = 0") {
        Field f(g, 1, Space::frequency);
        grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
            double r2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            f.values[idx] = std::exp(-r2 / 16.0);
        });
        double resid = 0.0;
        Field h1 = angular::project_HN(f, Dyadic(0), &resid);
        CHECK(rel_l2_diff(h1, f) < 1e-10);
        CHECK(resid < 1e-10);
        Field h4 = angular::project_HN(f, Dyadic(2), &resid);
        CHECK(grid::l2_norm(h4) < 1e-10 * grid::l2_norm(f));
    }
    SUBCASE("pure degree-4 data on capable shells: H_4 f = f, H_1 f = 0") {
        angular::ShellSynthesisSpec spec;
        spec.degree = 4;
        spec.capability_margin = 0;
        spec.radial_window = [](double r) { return (r > 3.0 && r < 9.0) ? 1.0 : 0.0; };
        std::mt19937_64 rng(5);
        Field f = angular::synthesize_on_shells(g, spec, rng);
        REQUIRE(grid::l2_norm(f) > 0.0);
        double resid = 0.0;
        Field h4 = angular::project_HN(f, Dyadic(2), &resid);
        CHECK(rel_l2_diff(h4, f) < 1e-8); // rho(4/4) = 1
        CHECK(resid < 1e-8);
        Field h1 = angular::project_HN(f, Dyadic(0), &resid);
        CHECK(grid::l2_norm(h1) < 1e-8 * grid::l2_norm(f));
    }
    SUBCASE("dyadic partition in degree resums the field") {
        angular::ShellSynthesisSpec spec;
        spec.degree = 3;
        spec.capability_margin = 0;
        spec.radial_window = [](double r) { return (r > 3.0 && r < 9.0) ? 1.0 : 0.0; };
        std::mt19937_64 rng(6);
        Field f = angular::synthesize_on_shells(g, spec, rng);
        Field radial(g, 1, Space::frequency);
        grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
            double r2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            radial.values[idx] = 0.3 * std::exp(-r2 / 25.0);
        });
        grid::axpy(f, cplx(1.0, 0.0), radial); // mixed degrees 0 and 3
        Field sum(g, 1, Space::frequency);
        sum.fill_zero();
        for (int e = 0; e <= 3; ++e) {
            Field h = angular::project_HN(f, Dyadic(e));
            grid::axpy(sum, cplx(1.0, 0.0), h);
        }
        CHECK(rel_l2_diff(sum, f) < 1e-8);
    }
}

TEST_CASE("H_N uniform boundedness") {
    GridSpec g(M_PI, 16);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // random fields and in-span synthesized data, one grid-wide constant
    Field f(g, 1, Space::frequency);
    for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
    angular::ShellSynthesisSpec spec;
    spec.degree = 3;
    spec.capability_margin = 0;
    spec.radial_window = [](double r) { return (r > 2.0 && r < 7.0) ? 1.0 : 0.0; };
    Field s = angular::synthesize_on_shells(g, spec, rng);
    for (const Field* probe : {&f, &s}) {
        double base = grid::l2_norm(*probe);
        for (int e = 0; e <= 3; ++e) {
            Field h = angular::project_HN(*probe, Dyadic(e));
            CHECK(grid::l2_norm(h) <= 1.1 * base);
        }
    }
}

TEST_CASE("orthogonality across separated dyadic degree blocks") {
    GridSpec g(M_PI, 24);
    // analyzed path: pure-degree data at separated scales is annihilated by
    // the complementary projection, so the pairing vanishes to rounding
    angular::ShellSynthesisSpec lo, hi;
    lo.degree = 1;
    lo.capability_margin = 0;
    lo.radial_window = [](double r) { return (r > 3.0 && r < 9.0) ? 1.0 : 0.0; };
    hi = lo;
    hi.degree = 8;
    std::mt19937_64 rng(12);
    Field f = angular::synthesize_on_shells(g, lo, rng);
    Field h = angular::synthesize_on_shells(g, hi, rng);
    REQUIRE(grid::l2_norm(f) > 0.0);
    REQUIRE(grid::l2_norm(h) > 0.0);
    double base = grid::l2_norm(f) * grid::l2_norm(h);
    Field h1f = angular::project_HN(f, Dyadic(0));  // keeps f
    Field h8h = angular::project_HN(h, Dyadic(3));  // keeps h
    Field h8f = angular::project_HN(f, Dyadic(3));  // annihilates f
    CHECK(grid::l2_norm(h8f) < 1e-8 * grid::l2_norm(f));
    cplx ip(0.0);
    for (std::size_t i = 0; i < h1f.values.size(); ++i)
        ip += std::conj(h8f.values[i]) * h8h.values[i];
    CHECK(std::abs(ip) < 1e-8 * base);

    // physical-space pairing of smooth decaying data with separated pure
    // degrees: the lattice sum tracks the vanishing continuum integral
    GridSpec gp(8.0, 32);
    AngularSpectrum sa = single_entry(1, 1, 1.0);
    AngularSpectrum sb = single_entry(6, 3, 1.0);
    Field fa = angular::synthesize(sa, gp);
    Field fb = angular::synthesize(sb, gp);
    cplx ipp(0.0);
    for (std::size_t i = 0; i < fa.values.size(); ++i)
        ipp += std::conj(fa.values[i]) * fb.values[i];
    ipp *= gp.cell_volume();
    CHECK(std::abs(ipp) < 1e-8 * grid::l2_norm(fa) * grid::l2_norm(fb));
}

TEST_CASE("H_N commutes with the annulus projection") {
    GridSpec g(M_PI, 16);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field f(g, 1, Space::frequency);
    for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
    Dyadic lam = Dyadic::from_value(4.0);
    Field a = angular::project_HN(multiplier::project_annulus(f, lam), Dyadic(1));
    Field b = multiplier::project_annulus(angular::project_HN(f, Dyadic(1)), lam);
    double scale = grid::l2_norm(f);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        diff += std::norm(a.values[i] - b.values[i]);
    CHECK(std::sqrt(diff) < 1e-8 * scale);
}

TEST_CASE("omega weight") {
    GridSpec g(M_PI, 24);
    SUBCASE("sigma = 0 is the identity on analyzed content") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Field f(g, 1, Space::frequency);
        for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
        Field w = angular::apply_omega_weight(f, 0.0);
        Field w2 = angular::apply_omega_weight(w, 0.0);
        CHECK(rel_l2_diff(w2, w) < 1e-10);
    }
    SUBCASE("pure degree 1 scales by sqrt(3), radial data untouched") {
        angular::ShellSynthesisSpec spec;
        spec.degree = 1;
        spec.capability_margin = 0;
        spec.radial_window = [](double r) { return (r > 2.0 && r < 8.0) ? 1.0 : 0.0; };
        std::mt19937_64 rng(10);
        Field f = angular::synthesize_on_shells(g, spec, rng);
        double resid = 0.0;
        Field w = angular::apply_omega_weight(f, 1.0, &resid);
        CHECK(resid < 1e-10);
        CHECK(grid::l2_norm(w) ==
              doctest::Approx(std::sqrt(3.0) * grid::l2_norm(f)).epsilon(1e-8));

        Field r0(g, 1, Space::frequency);
        grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
            double r2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            r0.values[idx] = std::exp(-r2 / 9.0);
        });
        Field w0 = angular::apply_omega_weight(r0, 3.0);
        CHECK(rel_l2_diff(w0, r0) < 1e-10);
    }
}

TEST_CASE("rotation generators") {
    GridSpec g(8.0, 32);
    SUBCASE("radial fields are annihilated") {
        AngularSpectrum spec = single_entry(0, 0, 1.2);
        Field f = angular::synthesize(spec, g);
        Field r = angular::rotation_apply(f, 0, 1);
        CHECK(grid::l2_norm(r) < 1e-8 * grid::l2_norm(f));
    }
    SUBCASE("x1 gaussian maps to -x2 gaussian under Omega_12") {
        const int M = g.points_per_axis;
        Field f(g, 1), expect(g, 1);
        std::int64_t idx = 0;
        for (int ix = 0; ix < M; ++ix)
            for (int iy = 0; iy < M; ++iy)
                for (int iz = 0; iz < M; ++iz, ++idx) {
                    double x = g.coord_of_index(ix), y = g.coord_of_index(iy),
                           z = g.coord_of_index(iz);
                    double gauss = std::exp(-(x * x + y * y + z * z) / 2.0);
                    f.values[idx] = x * gauss;
                    expect.values[idx] = -y * gauss;
                }
        Field r = angular::rotation_apply(f, 0, 1);
        CHECK(rel_l2_diff(r, expect) < 1e-6);
    }
    SUBCASE("casimir identity against synthesis coefficients") {
        AngularSpectrum spec;
        spec.entries.push_back(
            {1, 1, cplx(0.8, 0.0), {RadialProfile::Kind::solid_gaussian, 1.0}});
        spec.entries.push_back(
            {3, 4, cplx(0.0, 0.6), {RadialProfile::Kind::solid_gaussian, 1.0}});
        Field f = angular::synthesize(spec, g);
        double lhs = 0.0;
        for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 0}}) {
            Field r = angular::rotation_apply(f, i, j);
            lhs += std::pow(grid::l2_norm(r), 2);
        }
        double rhs = 0.0;
        for (const auto& e : spec.entries) {
            AngularSpectrum one;
            one.entries.push_back(e);
            double n = grid::l2_norm(angular::synthesize(one, g));
            rhs += e.l * (e.l + 1.0) * n * n;
        }
        CHECK(std::abs(lhs - rhs) < 1e-4 * rhs);
    }
    SUBCASE("warns when data touches the boundary") {
        diag::Collector c;
        Field f(g, 1);
        for (auto& v : f.values) v = cplx(1.0, 0.0);
        angular::rotation_apply(f, 0, 1);
        CHECK(c.contains("boundary"));
    }
}

TEST_CASE("analysis round trip validates against frequency synthesis") {
    GridSpec g(M_PI, 24);
    angular::ShellSynthesisSpec spec;
    spec.degree = 5;
    spec.capability_margin = 0;
    spec.radial_window = [](double r) { return (r > 3.0 && r < 10.0) ? 1.0 : 0.0; };
    std::mt19937_64 rng(11);
    Field f = angular::synthesize_on_shells(g, spec, rng);
    REQUIRE(grid::l2_norm(f) > 0.0);
    auto res = angular::analyze_component(f, 0, 8);
    CHECK(res.residual < 1e-6 * res.total);
    for (const auto& fit : res.fits) {
        for (int l = 0; l <= fit.degree; ++l) {
            if (l == 5) continue;
            for (int n = 0; n <= 2 * l; ++n) {
                double c = std::abs(fit.coeff[SphericalHarmonicBasis::flat_index(l, n)]);
                CHECK(c < 1e-8 * (res.total + 1.0));
            }
        }
    }
}

TEST_CASE("physical synthesis feeds the frequency-side analysis") {
    // a (4,0) solid-gaussian datum analyzed in frequency space: H_4 keeps
    // the bulk, H_1 sees little, and the content sitting on shells too thin
    // to attribute shows up as reported residual rather than silent loss
    GridSpec g(10.0, 40);
    Field f = angular::synthesize(single_entry(4, 0, 1.0), g);
    Field fh = grid::fft_forward(f);
    double base = grid::l2_norm(fh);
    double resid = 0.0;
    Field h4 = angular::project_HN(fh, Dyadic(2), &resid);
    Field h1 = angular::project_HN(fh, Dyadic(0));
    CHECK(resid > 0.0);
    CHECK(grid::l2_norm(h1) < 0.5 * resid * base); // leak well under the report
    CHECK(rel_l2_diff(h4, fh) < 2.0 * resid + 0.05);
    CHECK(resid < 0.45);
}

TEST_CASE("concentration probe on a reduced sweep") {
    angular::ConcentrationParams p;
    p.lambda = 4.0;
    p.grid_m = 24;
    p.trials = 1;
    p.alpha_n_pairs = {{0.25, 1}, {0.25, 2}, {0.25, 4}};
    auto rep = angular::concentration_probe(p);
    REQUIRE(rep.fits.count("alphaN_exponent"));
    CHECK(rep.samples.size() == 3);
    for (const auto& s : rep.samples) CHECK(s.value > 0.0);
    CHECK(rep.fits.at("alphaN_exponent").slope >= -0.05);
}
