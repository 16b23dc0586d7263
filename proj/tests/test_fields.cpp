#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vcl/initial_data.hpp"
#include "vcl/ops.hpp"

#include <random>

using namespace vcl;
using oracle::kPi;

namespace {

ScalarField2D random_band_limited(const Grid2D& g, int max_mode, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> c(g.size(), cplx{});
    for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
        for (int m2 = -max_mode; m2 <= max_mode; ++m2) {
            if (m1 < 0 || (m1 == 0 && m2 < 0)) continue; // fill half, mirror the rest
            cplx v{gauss(rng), (m1 == 0 && m2 == 0) ? 0.0 : gauss(rng)};
            c[static_cast<std::size_t>(g.index_of_mode(m1)) * g.n() + g.index_of_mode(m2)] = v;
            c[static_cast<std::size_t>(g.index_of_mode(-m1)) * g.n() + g.index_of_mode(-m2)] =
                std::conj(v);
        }
    }
    return ScalarField2D::from_coefficients(g, std::move(c));
}

} // namespace

TEST_CASE("round trip physical -> spectral -> physical") {
    const Grid2D g(64);
    auto f = ScalarField2D::sample(g, [](double x, double y) {
        return std::sin(kPi * x) * std::cos(2 * kPi * y) + 0.3 * std::cos(5 * kPi * x * 0 + kPi * y);
    });
    auto back = ScalarField2D::from_coefficients(g, {f.coefficients().begin(), f.coefficients().end()});
    auto a = f.values();
    auto b = back.values();
    double err = 0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("coefficients are true Fourier coefficients") {
    const Grid2D g(32);
    // f = sin(pi x) = (e^{i pi x} - e^{-i pi x}) / 2i: c_{1,0} = 1/(2i)
    auto f = ScalarField2D::sample(g, [](double x, double) { return std::sin(kPi * x); });
    CHECK(std::abs(f.coefficient(1, 0) - cplx(0, -0.5)) < 1e-13);
    CHECK(std::abs(f.coefficient(-1, 0) - cplx(0, 0.5)) < 1e-13);
    CHECK(std::abs(f.coefficient(0, 1)) < 1e-13);
}

TEST_CASE("Parseval: physical L2 equals coefficient sum") {
    const Grid2D g(64);
    auto f = random_band_limited(g, 10, 42);
    auto v = f.values();
    double phys = 0;
    for (double x : v) phys += x * x;
    phys *= g.spacing() * g.spacing();
    CHECK(f.l2_sq() == doctest::Approx(phys).epsilon(1e-10));
}

TEST_CASE("biot_savart_2d: zero field") {
    const Grid2D g(32);
    auto u = biot_savart_2d(ScalarField2D::zeros(g));
    CHECK(u.x.max_abs() == 0.0);
    CHECK(u.y.max_abs() == 0.0);
}

TEST_CASE("biot_savart_2d: eigenfunction of the Laplacian") {
    const Grid2D g(64);
    auto om = ScalarField2D::sample(g, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); });
    auto u = biot_savart_2d(om);
    // psi = -omega/(2 pi^2); u = (-d2 psi, d1 psi)
    auto u1_exact = ScalarField2D::sample(g, [](double x, double y) {
        return (1.0 / (2 * kPi)) * std::sin(kPi * x) * std::cos(kPi * y);
    });
    auto u2_exact = ScalarField2D::sample(g, [](double x, double y) {
        return -(1.0 / (2 * kPi)) * std::cos(kPi * x) * std::sin(kPi * y);
    });
    CHECK((u.x - u1_exact).max_abs() < 1e-12);
    CHECK((u.y - u2_exact).max_abs() < 1e-12);
    // curl u = omega, spectrally and against a finite-difference oracle
    CHECK((curl(u) - om).max_abs() < 1e-12);
    double fd_err = 0;
    for (int i1 = 0; i1 < g.n(); i1 += 7)
        for (int i2 = 0; i2 < g.n(); i2 += 7)
            fd_err = std::max(fd_err, std::abs(oracle::fd_curl_at(u, i1, i2) - om.value(i1, i2)));
    CHECK(fd_err < kPi * kPi * g.spacing() * g.spacing()); // second-order FD truncation
}

TEST_CASE("biot_savart_2d: nonzero mean rejected") {
    const Grid2D g(32);
    auto om = ScalarField2D::sample(g, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(biot_savart_2d(om), NonZeroMean);
}

TEST_CASE("biot_savart_2d: single-bubble strain window") {
    const Grid2D g(512);
    const double ell = 0.125;
    auto om = init::single_bubble(g, ell);
    auto u = biot_savart_2d(om);
    auto d1u1 = u.x.dx();
    auto d1u2 = u.y.dx();
    auto d2u1 = u.x.dy();
    // paper claims d1u1 > 1/2 and |offdiag| < 1/20 on [0, 0.5 ell]^2
    std::vector<Vec2> pts;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) pts.push_back({0.5 * ell * i / 4, 0.5 * ell * j / 4});
    auto v11 = interpolate(d1u1, pts);
    auto v12 = interpolate(d1u2, pts);
    auto v21 = interpolate(d2u1, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(v11[i] > 0.5);
        CHECK(std::abs(v12[i]) < 0.05);
        CHECK(std::abs(v21[i]) < 0.05);
    }
    // incompressibility: d2u2 = -d1u1 via divergence-free
    CHECK(divergence(u).max_abs() < 1e-10 * u.max_abs());
}

TEST_CASE("curl_2p5d") {
    const Grid2D g(64);
    SUBCASE("constant rho") {
        auto w = curl_2p5d(ScalarField2D::sample(g, [](double, double) { return 3.7; }));
        CHECK(w.x.max_abs() < 1e-12);
        CHECK(w.y.max_abs() < 1e-12);
    }
    SUBCASE("analytic derivative") {
        auto rho = ScalarField2D::sample(g, [](double, double y) { return std::sin(kPi * y); });
        auto w = curl_2p5d(rho);
        auto wx_exact = ScalarField2D::sample(g, [](double, double y) { return kPi * std::cos(kPi * y); });
        CHECK((w.x - wx_exact).max_abs() < 1e-11);
        CHECK(w.y.max_abs() < 1e-12);
        CHECK(std::abs(w.x.mean()) < 1e-13);
    }
    SUBCASE("thm-1.2 profile: constant gradient on the inner ball") {
        const int n = 4;
        auto rho = init::small_scale_profile(g, n, init::LinearThm2{});
        auto w = curl_2p5d(rho);
        // on B(0, 2^{-n/2}) the profile is 2^{n/2} x2, so curl = (2^{n/2}, 0)
        std::vector<Vec2> pts{{0, 0.05}, {0.1, -0.1}, {-0.12, 0.03}, {0, -0.2}};
        auto wx = interpolate(w.x, pts);
        auto wy = interpolate(w.y, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(wx[i] == doctest::Approx(4.0).epsilon(5e-4));
            CHECK(std::abs(wy[i]) < 2e-3);
        }
    }
}

TEST_CASE("energy and enstrophy quadrature") {
    const Grid2D g(64);
    SUBCASE("zero") {
        CHECK(energy({ScalarField2D::zeros(g), ScalarField2D::zeros(g)}) == 0.0);
        CHECK(enstrophy(ScalarField2D::zeros(g)) == 0.0);
    }
    SUBCASE("single mode") {
        auto u1 = ScalarField2D::sample(g, [](double, double y) { return std::sin(kPi * y); });
        CHECK(energy({u1, ScalarField2D::zeros(g)}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("orthogonal parts add exactly") {
        auto rho = init::small_scale_profile(g, 4, init::LinearThm2{});
        auto wl = ScalarField2D::sample(g, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); });
        auto ws = curl_2p5d(rho);
        const double total = enstrophy(wl) + ws.x.l2_sq() + ws.y.l2_sq();
        CHECK(total == doctest::Approx(enstrophy(wl) + grad_l2_sq(rho)).epsilon(1e-12));
    }
}

TEST_CASE("interpolate") {
    const Grid2D g(64);
    SUBCASE("constant field") {
        auto f = ScalarField2D::sample(g, [](double, double) { return 2.5; });
        auto v = interpolate(f, std::vector<Vec2>{{0.123, -0.77}});
        CHECK(v[0] == doctest::Approx(2.5).epsilon(1e-13));
    }
    SUBCASE("band-limited exactness") {
        auto f = ScalarField2D::sample(g, [](double x, double) { return std::sin(kPi * x); });
        auto v = interpolate(f, std::vector<Vec2>{{0.25, 0.1}});
        CHECK(std::abs(v[0] - std::sin(kPi * 0.25)) < 1e-10);
    }
    SUBCASE("matches the direct Fourier oracle at random points") {
        auto f = random_band_limited(g, g.dealias_cut(), 7);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<Vec2> pts;
        for (int i = 0; i < 100; ++i) pts.push_back({uni(rng), uni(rng)});
        auto v = interpolate(f, pts);
        for (std::size_t i = 0; i < pts.size(); ++i)
            CHECK(std::abs(v[i] - oracle::fourier_sum_at(f, pts[i].x, pts[i].y)) < 1e-9);
    }
    SUBCASE("local-polynomial path is at least cubic order") {
        // force the grid path with > direct-limit point counts at two resolutions
        auto probe = [](int N) {
            const Grid2D gg(N);
            auto f = ScalarField2D::sample(gg, [](double x, double y) {
                return std::sin(3 * kPi * x) * std::cos(2 * kPi * y);
            });
            std::vector<Vec2> pts(kInterpolateDirectLimit + 8, Vec2{0.1234567, -0.654321});
            auto v = interpolate(f, pts);
            return std::abs(v[0] - std::sin(3 * kPi * 0.1234567) * std::cos(2 * kPi * -0.654321));
        };
        const double e1 = probe(64), e2 = probe(128);
        CHECK(e1 / e2 > 12.0); // >= 4th order: factor 16 per halving, margin for constants
    }
}

TEST_CASE("velocity_gradient_at agrees with field path") {
    const Grid2D g(128);
    auto om = init::single_bubble(g, 0.125);
    auto u = biot_savart_2d(om);
    const Vec2 p{0.03, 0.05};
    auto vg = velocity_gradient_at(om, p);
    auto ud = biot_savart_2d(om.dealiased());
    CHECK(vg.u.x == doctest::Approx(interpolate(ud.x, std::vector<Vec2>{p})[0]).epsilon(1e-9));
    CHECK(vg.u.y == doctest::Approx(interpolate(ud.y, std::vector<Vec2>{p})[0]).epsilon(1e-9));
    CHECK(vg.d1u1 == doctest::Approx(interpolate(ud.x.dx().dealiased(), std::vector<Vec2>{p})[0])
                         .epsilon(1e-8));
    CHECK(vg.omega == doctest::Approx(interpolate(om.dealiased(), std::vector<Vec2>{p})[0]).epsilon(1e-8));
}
