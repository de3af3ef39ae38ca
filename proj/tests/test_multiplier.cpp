#include "core/multiplier.hpp"

#include "core/diag.hpp"
#include "core/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dwl;
using grid::cplx;
using grid::Field;
using grid::GridSpec;
using grid::Space;
using multiplier::Bump;
using multiplier::CapCollection;
using multiplier::CubeCollection;
using multiplier::Dyadic;

namespace {

Field random_field(const GridSpec& g, std::uint64_t seed, int ncomp = 1) {
    Field f(g, ncomp);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
    return f;
}

Field single_mode(const GridSpec& g, int kx, int ky, int kz) {
    Field f(g, 1, Space::frequency);
    f.fill_zero();
    const int M = g.points_per_axis;
    auto wrap = [M](int k) { return (k % M + M) % M; };
    f.values[(static_cast<std::int64_t>(wrap(kx)) * M + wrap(ky)) * M + wrap(kz)] =
        cplx(1.0, 0.0);
    return f;
}

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace

TEST_CASE("dyadic scale type") {
    CHECK(Dyadic::from_value(8.0).exponent == 3);
    CHECK(Dyadic::from_value(0.25).exponent == -2);
    CHECK(Dyadic(5).value() == 32.0);
    CHECK_THROWS(Dyadic::from_value(3.0));
    CHECK_THROWS(Dyadic::from_value(-2.0));
}

TEST_CASE("bump partition of unity over the dyadic range") {
    const Bump& b = multiplier::bump();
    CHECK(b.rho1(0.0) == 1.0);
    CHECK(b.rho(0.49) == 0.0);
    CHECK(b.rho(2.01) == 0.0);
    for (double r = 1e-3; r < 1e3; r *= 1.07) {
        double sum = 0.0;
        for (int k = -40; k <= 40; ++k) sum += b.rho(r / std::ldexp(1.0, k));
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
    // rho1 telescopes the lambda <= 1 tail
    for (double r : {0.1, 0.7, 1.0, 1.3, 1.9, 2.5}) {
        double tail = 0.0;
        for (int k = 0; k >= -40; --k) tail += b.rho(r / std::ldexp(1.0, k));
        CHECK(std::abs(b.rho1(r) - tail) < 1e-12);
    }
}

TEST_CASE("annulus projection on single modes") {
    GridSpec g(M_PI, 32); // unit lattice spacing
    SUBCASE("mode on the annulus peak passes with rho(1)") {
        Field f = single_mode(g, 4, 0, 0);
        std::int64_t idx = 4 * 32 * 32;
        REQUIRE(std::abs(f.values[idx]) == 1.0);
        Field p = multiplier::project_annulus(f, Dyadic::from_value(4.0));
        const Bump& b = multiplier::bump();
        CHECK(std::abs(p.values[idx] - b.rho(1.0) * f.values[idx]) < 1e-14);
    }
    SUBCASE("mode far outside the annulus is annihilated") {
        Field f = single_mode(g, 8, 0, 0);
        Field p = multiplier::project_annulus(f, Dyadic::from_value(1.0));
        for (const auto& v : p.values) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("warns near the Nyquist shell") {
        diag::Collector c;
        Field f = single_mode(g, 4, 0, 0);
        multiplier::project_annulus(f, Dyadic::from_value(16.0)); // Nyquist here is 16
        CHECK(c.contains("Nyquist"));
    }
}

TEST_CASE("annulus partition recovers the resolved band") {
    GridSpec g(M_PI, 32);
    Field f = random_field(g, 5);
    Field fh = grid::fft_forward(f);
    Field sum(g, 1, Space::frequency);
    sum.fill_zero();
    for (int e = -2; e <= 4; ++e) {
        Field p = multiplier::project_annulus(fh, Dyadic(e), false);
        grid::axpy(sum, cplx(1.0, 0.0), p);
    }
    // on 2 <= |xi| <= M pi / (4 L) = 8 the partition telescopes to 1
    double worst = 0.0;
    grid::for_each_mode(g, [&](std::int64_t idx, int kx, int ky, int kz) {
        double r = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        if (r < 2.0 || r > 8.0) return;
        worst = std::max(worst, std::abs(sum.values[idx] - fh.values[idx]));
    });
    CHECK(worst < 1e-8 * grid::inf_norm(fh));
}

TEST_CASE("near-orthogonality of separated annuli") {
    GridSpec g(M_PI, 16);
    Field fh = grid::fft_forward(random_field(g, 6));
    Field a = multiplier::project_annulus(fh, Dyadic::from_value(2.0));
    Field b = multiplier::project_annulus(a, Dyadic::from_value(8.0));
    CHECK(grid::l2_norm(b) == 0.0); // disjoint symbol supports, exact
}

TEST_CASE("cube collection partitions and overlaps") {
    GridSpec g(M_PI, 16);
    CubeCollection cubes(g, 4.0, 4.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-g.nyquist(), g.nyquist());
    for (int t = 0; t < 200; ++t) {
        double x = uni(rng), y = uni(rng), z = uni(rng);
        double sum = 0.0;
        int overlap = 0;
        for (int q = 0; q < cubes.size(); ++q) {
            double w = cubes.weight(q, x, y, z);
            sum += w;
            if (w > 0.0) ++overlap;
        }
        CHECK(std::abs(sum - 1.0) < 1e-10);
        CHECK(overlap <= 8);
    }
}

TEST_CASE("cube projection on modes") {
    GridSpec g(M_PI, 16);
    CubeCollection cubes(g, 8.0, 4.0);
    // the cube centered at the origin exists by construction
    int q_center = -1;
    for (int q = 0; q < cubes.size(); ++q) {
        auto c = cubes.center(q);
        if (std::abs(c[0]) < 1e-12 && std::abs(c[1]) < 1e-12 && std::abs(c[2]) < 1e-12) {
            q_center = q;
            break;
        }
    }
    REQUIRE(q_center >= 0);
    CHECK(cubes.weight(q_center, 0.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-9));

    SUBCASE("partition of unity on a random field") {
        Field f = random_field(g, 31);
        Field fh = grid::fft_forward(f);
        Field sum(g, 1, Space::frequency);
        sum.fill_zero();
        for (int q = 0; q < cubes.size(); ++q)
            grid::axpy(sum, cplx(1.0, 0.0), multiplier::project_cube(fh, cubes, q));
        CHECK(rel_l2_diff(sum, fh) < 1e-10);
    }
    SUBCASE("mode far from the cube is annihilated") {
        Field f = single_mode(g, 6, 6, 6);
        Field p = multiplier::project_cube(f, cubes, q_center);
        CHECK(grid::l2_norm(p) == 0.0);
    }
}

TEST_CASE("cap collection partitions, overlaps, coverage") {
    for (double alpha : {1.0, 0.5, 0.25}) {
        CapCollection caps(alpha);
        CHECK(caps.coverage_radius() <= 0.45 * alpha);
        std::mt19937_64 rng(23);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            std::array<double, 3> d = {gauss(rng), gauss(rng), gauss(rng)};
            double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            for (auto& x : d) x /= n;
            double sum = 0.0;
            int overlap = 0;
            for (int kappa = 0; kappa < caps.size(); ++kappa) {
                double w = caps.weight(kappa, d[0], d[1], d[2]);
                sum += w;
                if (w > 0.0) ++overlap;
            }
            CHECK(std::abs(sum - 1.0) < 1e-10);
            CHECK(overlap <= 12);
        }
    }
    CHECK_THROWS(CapCollection(0.0));
    CHECK_THROWS(CapCollection(1.5));
}

TEST_CASE("cap projection properties") {
    GridSpec g(M_PI, 16);
    CapCollection caps(0.5);
    SUBCASE("commutes with the annulus projection exactly") {
        Field f = random_field(g, 9);
        Field fh = grid::fft_forward(f);
        Dyadic lam = Dyadic::from_value(4.0);
        Field a = multiplier::project_cap(multiplier::project_annulus(fh, lam), caps, 3);
        Field b = multiplier::project_annulus(multiplier::project_cap(fh, caps, 3), lam);
        double scale = grid::inf_norm(fh);
        for (std::size_t i = 0; i < a.values.size(); ++i)
            CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-15 * scale);
    }
    SUBCASE("partition of unity away from the zero mode") {
        Field f = random_field(g, 10);
        Field fh = grid::fft_forward(f);
        fh.values[0] = cplx(0.0);
        Field sum(g, 1, Space::frequency);
        sum.fill_zero();
        for (int kappa = 0; kappa < caps.size(); ++kappa)
            grid::axpy(sum, cplx(1.0, 0.0), multiplier::project_cap(fh, caps, kappa));
        CHECK(rel_l2_diff(sum, fh) < 1e-10);
    }
    SUBCASE("mode along a direction passes with the normalized weight") {
        Field f = single_mode(g, 6, 0, 0);
        std::int64_t idx = 6 * 16 * 16;
        REQUIRE(std::abs(f.values[idx]) == 1.0);
        int kappa = caps.cap_containing({1.0, 0.0, 0.0});
        Field p = multiplier::project_cap(f, caps, kappa);
        double expect = caps.weight(kappa, 1.0, 0.0, 0.0);
        CHECK(expect > 0.0);
        CHECK(std::abs(p.values[idx] - cplx(expect, 0.0)) < 1e-14);
    }
    SUBCASE("zero bin always gets weight zero") {
        Field f(g, 1, Space::frequency);
        f.fill_zero();
        f.values[0] = cplx(3.0, 1.0);
        Field p = multiplier::project_cap(f, caps, 0);
        CHECK(std::abs(p.values[0]) == 0.0);
    }
    SUBCASE("warns when the cap under-resolves the lattice directions") {
        diag::Collector c;
        CapCollection thin(1.0 / 16.0);
        Field f = single_mode(g, 1, 0, 0); // dominant scale 1, spacing 1
        multiplier::project_cap(f, thin, 0);
        CHECK(c.contains("under-resolves"));
    }
}

TEST_CASE("self-boundedness of the projections on L2") {
    GridSpec g(M_PI, 16);
    Field f = random_field(g, 77);
    double base = grid::l2_norm(f);
    CHECK(grid::l2_norm(multiplier::project_annulus(f, Dyadic::from_value(4.0))) <=
          base * (1.0 + 1e-12));
    CubeCollection cubes(g, 4.0);
    CHECK(grid::l2_norm(multiplier::project_cube(f, cubes, cubes.size() / 2)) <=
          base * (1.0 + 1e-12));
    CapCollection caps(0.5);
    CHECK(grid::l2_norm(multiplier::project_cap(f, caps, 1)) <= base * (1.0 + 1e-12));
}

TEST_CASE("modulation filter") {
    GridSpec g(M_PI, 12);
    const auto law = DispersionLaw::wave();
    const int K = 32;
    const double period = 4.0 * M_PI; // tau bins at half-integers
    const double dt = period / K;

    SUBCASE("free wave is annihilated far below the leakage budget") {
        Field data = random_field(g, 40);
        auto u = propagator::free_evolution(data, law, Sign::plus, dt, K);
        auto res = multiplier::project_modulation(u, Dyadic::from_value(2.0), Sign::plus);
        double base = grid::l2_norm(u.frames[0]);
        double worst = 0.0;
        for (const auto& fr : res.field.frames)
            worst = std::max(worst, grid::l2_norm(fr));
        CHECK(worst <= 1e-3 * base);
        CHECK(res.leakage >= 0.0);
    }

    SUBCASE("zero-modulation mode passes through the cumulative filter") {
        // e^{i(t tau0 + x.xi0)} with tau0 = -|xi0| has modulation 0 for theta=+
        Field mode = single_mode(g, 1, 0, 0); // |xi0| = 1
        std::int64_t idx = 1 * 12 * 12;
        grid::SpacetimeField u;
        u.time_step = dt;
        for (int k = 0; k < K; ++k) {
            Field fr = mode;
            double ang = -1.0 * (dt * k);
            fr.values[idx] *= cplx(std::cos(ang), std::sin(ang));
            u.frames.push_back(grid::fft_inverse(fr));
        }
        for (double d : {2.0, 4.0, 8.0}) {
            auto res = multiplier::project_modulation_cumulative(
                u, Dyadic::from_value(d), Sign::plus);
            for (int k = 0; k < K; ++k)
                CHECK(rel_l2_diff(res.field.frames[k], u.frames[k]) < 1e-12);
        }
    }

    SUBCASE("modulation-2 mode is selected by C_2 with the discrete weight") {
        Field mode = single_mode(g, 1, 0, 0);
        std::int64_t idx = 1 * 12 * 12;
        grid::SpacetimeField u;
        u.time_step = dt;
        for (int k = 0; k < K; ++k) {
            Field fr = mode;
            double ang = -1.0 * (dt * k); // tau0 = -1, theta = -: modulation 2
            fr.values[idx] *= cplx(std::cos(ang), std::sin(ang));
            u.frames.push_back(grid::fft_inverse(fr));
        }
        auto res = multiplier::project_modulation(u, Dyadic::from_value(2.0), Sign::minus);
        // discrete expectation computed directly from the taper and weights
        const Bump& b = multiplier::bump();
        std::vector<cplx> series(K);
        cplx mean(0.0);
        for (int k = 0; k < K; ++k) {
            double ang = -2.0 * (dt * k);
            mean += cplx(std::cos(ang), std::sin(ang));
        }
        mean /= double(K);
        for (int k = 0; k < K; ++k) {
            double t = (k + 0.5) / K;
            double w = Bump::smoothstep(t / 0.1) * Bump::smoothstep((1.0 - t) / 0.1);
            double ang = -2.0 * (dt * k);
            series[k] = w * (cplx(std::cos(ang), std::sin(ang)) - mean);
        }
        double expect_sq = 0.0;
        for (int j = 0; j < K; ++j) {
            cplx bin(0.0);
            for (int k = 0; k < K; ++k) {
                double ang = -2.0 * M_PI * j * k / K;
                bin += series[k] * cplx(std::cos(ang), std::sin(ang));
            }
            int sj = j <= K / 2 ? j : j - K;
            double tau = (2.0 * M_PI / period) * sj;
            double sel = j == 0 ? 0.0 : b.rho(std::abs(tau) / 2.0);
            expect_sq += sel * sel * std::norm(bin) / double(K);
        }
        // per-frame mean-square fraction of the mode amplitude
        double expect = std::sqrt(expect_sq / K);
        double got_sq = 0.0;
        for (const auto& fr : res.field.frames) got_sq += std::pow(grid::l2_norm(fr), 2);
        double base = grid::l2_norm(u.frames[0]);
        double got = std::sqrt(got_sq / K) / base;
        CHECK(got == doctest::Approx(expect).epsilon(1e-8));
        CHECK(b.rho(1.0) == doctest::Approx(1.0)); // shell weight on the exact bin
    }

    SUBCASE("window too short is rejected") {
        Field data = random_field(g, 41);
        auto u = propagator::free_evolution(data, law, Sign::plus, dt, K);
        CHECK_THROWS(
            multiplier::project_modulation(u, Dyadic::from_value(0.5), Sign::plus));
    }

    SUBCASE("self-boundedness of both filters on a step path") {
        Field f1 = random_field(g, 42), f2 = random_field(g, 43);
        grid::SpacetimeField u;
        u.time_step = dt;
        for (int k = 0; k < K; ++k) {
            const Field& d = k < K / 2 ? f1 : f2;
            u.frames.push_back(propagator::evolve(d, law, Sign::plus, dt * k));
        }
        for (bool cumulative : {false, true}) {
            auto res = cumulative
                           ? multiplier::project_modulation_cumulative(
                                 u, Dyadic::from_value(2.0), Sign::plus)
                           : multiplier::project_modulation(u, Dyadic::from_value(2.0),
                                                            Sign::plus);
            double acc_in = 0.0, acc_out = 0.0;
            for (int k = 0; k < K; ++k) {
                acc_in += std::pow(grid::l2_norm(u.frames[k]), 2);
                acc_out += std::pow(grid::l2_norm(res.field.frames[k]), 2);
            }
            CHECK(acc_out <= acc_in * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("bernstein single-mode oracle") {
    GridSpec g(M_PI, 16);
    Field f = single_mode(g, 4, 0, 0);
    Field phys = grid::fft_inverse(f);
    double linf = grid::inf_norm(phys);
    double l2 = grid::lebesgue_norm(phys, 2.0);
    // |e^{ix.xi}|_inf / ||e^{ix.xi}||_2 = (2L)^{-3/2}
    CHECK(linf / l2 == doctest::Approx(std::pow(2.0 * M_PI, -1.5)).epsilon(1e-12));
}

TEST_CASE("bernstein probe sweep stays under the volume-factor slope") {
    multiplier::BernsteinParams p;
    p.lambda_sweep = {2, 4, 8};
    p.grid_m = 32;
    p.trials = 2;
    auto rep = multiplier::bernstein_probe(p);
    REQUIRE(rep.fits.count("lambda_exponent"));
    CHECK(rep.fits.at("lambda_exponent").slope <= 1.5 + 0.15);
    CHECK(rep.params.at("max_normalized_ratio") > 0.0);
    CHECK(rep.samples.size() == 3);
}
