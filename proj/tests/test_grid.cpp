#include "core/grid.hpp"
#include "core/snapshot.hpp"
#include "core/spacetime.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace dwl;
using grid::cplx;
using grid::Field;
using grid::GridSpec;
using grid::Space;

namespace {

Field random_field(const GridSpec& g, std::uint64_t seed, int ncomp = 1) {
    Field f(g, ncomp);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& v : f.values) v = cplx(gauss(rng), gauss(rng));
    return f;
}

} // namespace

TEST_CASE("grid invariants") {
    GridSpec g(2.0, 16);
    CHECK(g.cell_volume() * g.point_count() == doctest::Approx(std::pow(4.0, 3)));
    CHECK(g.freq_spacing() == doctest::Approx(M_PI / 2.0));
    CHECK_THROWS(GridSpec(1.0, 7));
    CHECK_THROWS(GridSpec(1.0, 4));
    CHECK_THROWS(GridSpec(-1.0, 16));
}

TEST_CASE("fft zero and round trip") {
    GridSpec g(1.0, 16);
    Field z(g, 1);
    Field zh = grid::fft_forward(z);
    for (auto& v : zh.values) CHECK(std::abs(v) == 0.0);

    Field f = random_field(g, 7);
    Field back = grid::fft_inverse(grid::fft_forward(f));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        num += std::norm(back.values[i] - f.values[i]);
        den += std::norm(f.values[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("single lattice mode transforms to one bin of weight (2L)^3") {
    GridSpec g(1.5, 12);
    const int kx = 2, ky = -3, kz = 1;
    Field f(g, 1);
    const double fs = g.freq_spacing();
    const int M = g.points_per_axis;
    std::int64_t idx = 0;
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy)
            for (int iz = 0; iz < M; ++iz, ++idx) {
                double phase = fs * (kx * g.coord_of_index(ix) + ky * g.coord_of_index(iy) +
                                     kz * g.coord_of_index(iz));
                f.values[idx] = cplx(std::cos(phase), std::sin(phase));
            }
    Field fh = grid::fft_forward(f);
    double vol = std::pow(2.0 * g.half_period, 3);
    grid::for_each_mode(g, [&](std::int64_t i, int ax, int ay, int az) {
        double expect = (ax == kx && ay == ky && az == kz) ? vol : 0.0;
        CHECK(std::abs(fh.values[i] - cplx(expect, 0.0)) < 1e-9 * vol);
    });
}

TEST_CASE("gaussian transform matches the closed form") {
    // fhat(xi) = (2 pi)^{3/2} exp(-|xi|^2/2) for f = exp(-|x|^2/2)
    GridSpec g(16.0, 64);
    Field f(g, 1);
    const int M = g.points_per_axis;
    std::int64_t idx = 0;
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy)
            for (int iz = 0; iz < M; ++iz, ++idx) {
                double x = g.coord_of_index(ix), y = g.coord_of_index(iy),
                       z = g.coord_of_index(iz);
                f.values[idx] = std::exp(-(x * x + y * y + z * z) / 2.0);
            }
    Field fh = grid::fft_forward(f);
    const double fs = g.freq_spacing();
    grid::for_each_mode(g, [&](std::int64_t i, int kx, int ky, int kz) {
        double xi2 = fs * fs * (double(kx) * kx + double(ky) * ky + double(kz) * kz);
        if (xi2 > 4.0) return; // |xi| <= 2
        double expect = std::pow(2.0 * M_PI, 1.5) * std::exp(-xi2 / 2.0);
        CHECK(std::abs(fh.values[i].real() - expect) < 1e-6 * expect);
        CHECK(std::abs(fh.values[i].imag()) < 1e-9);
    });
}

TEST_CASE("plancherel identity on random fields") {
    GridSpec g(2.0, 16);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Field f = random_field(g, seed);
        double a = grid::lebesgue_norm(f, 2.0);
        double b = grid::l2_norm(grid::fft_forward(f));
        CHECK(std::abs(a - b) < 1e-10 * a);
    }
}

TEST_CASE("fft of a real even field is real even") {
    GridSpec g(1.0, 16);
    Field f(g, 1);
    const int M = g.points_per_axis;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // symmetrize a random real field: f(x) = h(x) + h(-x)
    std::vector<double> h(f.values.size());
    for (auto& v : h) v = gauss(rng);
    auto wrap = [M](int i) { return (M - i) % M; };
    std::int64_t idx = 0;
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy)
            for (int iz = 0; iz < M; ++iz, ++idx) {
                std::int64_t mirror =
                    (static_cast<std::int64_t>(wrap(ix)) * M + wrap(iy)) * M + wrap(iz);
                f.values[idx] = cplx(h[idx] + h[mirror], 0.0);
            }
    Field fh = grid::fft_forward(f);
    double scale = grid::inf_norm(fh);
    auto wrapidx = [&](int ix, int iy, int iz) {
        return (static_cast<std::int64_t>(wrap(ix)) * M + wrap(iy)) * M + wrap(iz);
    };
    idx = 0;
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy)
            for (int iz = 0; iz < M; ++iz, ++idx) {
                CHECK(std::abs(fh.values[idx].imag()) < 1e-10 * scale);
                CHECK(std::abs(fh.values[idx] - fh.values[wrapidx(ix, iy, iz)]) <
                      1e-10 * scale);
            }
}

TEST_CASE("lebesgue norms") {
    GridSpec g(1.0, 8);
    Field f(g, 1);
    SUBCASE("constant field, p = 2") {
        for (auto& v : f.values) v = cplx(1.0, 0.0);
        CHECK(grid::lebesgue_norm(f, 2.0) ==
              doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
    }
    SUBCASE("zero field") {
        CHECK(grid::lebesgue_norm(f, 1.0) == 0.0);
        CHECK(grid::lebesgue_norm(f, 7.5) == 0.0);
    }
    SUBCASE("half-filled bump with value 2 at p = 4") {
        for (std::int64_t i = 0; i < f.slab() / 2; ++i) f.values[i] = cplx(2.0, 0.0);
        double vol = std::pow(2.0, 3);
        CHECK(grid::lebesgue_norm(f, 4.0) ==
              doctest::Approx(std::pow(16.0 * vol / 2.0, 0.25)).epsilon(1e-12));
    }
    SUBCASE("rejects p < 1") { CHECK_THROWS(grid::lebesgue_norm(f, 0.5)); }
}

TEST_CASE("holder consistency on random fields") {
    GridSpec g(1.0, 12);
    Field f = random_field(g, 3), h = random_field(g, 4);
    Field prod = f;
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] *= h.values[i];
    CHECK(grid::lebesgue_norm(prod, 1.0) <=
          grid::lebesgue_norm(f, 2.0) * grid::lebesgue_norm(h, 2.0) * (1.0 + 1e-12));
}

TEST_CASE("mixed norm") {
    GridSpec g(1.0, 8);
    SUBCASE("constant-in-time equals A sqrt(T)") {
        Field a(g, 1);
        for (auto& v : a.values) v = cplx(0.7, 0.2);
        grid::SpacetimeField u(0.25, {a, a, a, a, a});
        double frame = grid::lebesgue_norm(a, 2.0);
        CHECK(grid::mixed_norm(u, 2.0, 2.0) ==
              doctest::Approx(frame * std::sqrt(1.0)).epsilon(1e-12));
    }
    SUBCASE("two frames with norms 3 and 4, dt = 1") {
        Field a(g, 1), b(g, 1);
        double c3 = 3.0 / std::pow(2.0, 1.5), c4 = 4.0 / std::pow(2.0, 1.5);
        for (auto& v : a.values) v = cplx(c3, 0.0);
        for (auto& v : b.values) v = cplx(c4, 0.0);
        grid::SpacetimeField u(1.0, {a, b});
        CHECK(grid::mixed_norm(u, 2.0, 2.0) ==
              doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
    }
    SUBCASE("zero")
    {
        Field z(g, 1);
        grid::SpacetimeField u(0.5, {z, z, z});
        CHECK(grid::mixed_norm(u, 2.0, 2.0) == 0.0);
    }
    SUBCASE("rejects bad exponents") {
        Field z(g, 1);
        grid::SpacetimeField u(0.5, {z, z});
        CHECK_THROWS(grid::mixed_norm(u, 0.5, 2.0));
        CHECK_THROWS(grid::mixed_norm(u, 2.0, 0.0));
    }
}

TEST_CASE("snapshot round trip, scalar and spinor") {
    GridSpec g(1.0, 8);
    auto tmp = std::filesystem::temp_directory_path();
    for (int ncomp : {1, 4}) {
        Field f = random_field(g, 21 + ncomp, ncomp);
        auto path = (tmp / ("dwl_snapshot_test_" + std::to_string(ncomp) + ".dwl")).string();
        grid::save_snapshot(f, path);
        Field back = grid::load_snapshot(path);
        REQUIRE(back.components == ncomp);
        REQUIRE(back.grid == f.grid);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(back.values[i] == f.values[i]); // bit-exact binary format
        std::filesystem::remove(path);
    }
}
