#include "doctest.h"

#include <cmath>
#include <random>

#include "hjid/counterexample.hpp"
#include "hjid/errors.hpp"
#include "hjid/hamiltonian_model.hpp"

using namespace hjid;
namespace ce = hjid::counterexample;

namespace {

std::vector<HamiltonianModel> sample_models() {
    return {ce::quartic_model(), HamiltonianModel::burgers(),
            HamiltonianModel::homogeneous({0.0, 0.3, 0.5, 0.0, 1.0 / 12.0}),
            HamiltonianModel::transformed_traffic({1.0, 0.5, 1.0, -0.3, 1.0})};
}

} // namespace

TEST_CASE("quartic potential values") {
    const auto g = Potential::quartic_well();
    CHECK(g.value(0.0) == 0.0);
    CHECK(g.value(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.value(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.value(1.0 / std::sqrt(2.0)) == doctest::Approx(15.0 / 16.0).epsilon(1e-14));
    CHECK(g.value(3.0) == 1.0);
    CHECK(g.d1(1.0) == 0.0);
    CHECK(g.d1(-2.5) == 0.0);
}

TEST_CASE("quadratic potential evaluates p^2/2 + g") {
    const auto H = ce::quartic_model();
    const auto e = H.eval(0.0, 2.0);
    CHECK(e.H == doctest::Approx(2.0));
    CHECK(e.dHdp == doctest::Approx(2.0));
    CHECK(e.dHdx == doctest::Approx(0.0));
    CHECK(H.value(0.5, 1.0) == doctest::Approx(0.5 + ce::quartic_g(0.5)));
    CHECK(H.dx(0.5, 1.0) == doctest::Approx(ce::quartic_g_prime(0.5)));
}

TEST_CASE("Legendre transform of the quartic well is v^2/2 - g") {
    const auto H = ce::quartic_model();
    CHECK(legendre(H, 1.0, 0.0) == doctest::Approx(-1.0));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> x(-2.0, 2.0), v(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        const double xx = x(rng), vv = v(rng);
        CHECK(legendre(H, xx, vv) == doctest::Approx(0.5 * vv * vv - ce::quartic_g(xx)).epsilon(1e-12));
    }
}

TEST_CASE("Legendre duality against a dense momentum grid") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> x(-1.5, 1.5), v(-1.5, 1.5);
    for (const auto& H : sample_models()) {
        for (int k = 0; k < 6; ++k) {
            const double xx = x(rng), vv = v(rng);
            double best = -1e300;
            for (int i = -200000; i <= 200000; ++i) {
                const double p = 1e-4 * i;
                best = std::max(best, p * vv - H.value(xx, p));
            }
            CHECK(std::abs(best - legendre(H, xx, vv)) <= 1e-8);
        }
    }
}

TEST_CASE("biconjugation recovers H") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> x(-1.5, 1.5), p(-1.0, 1.0);
    for (const auto& H : sample_models()) {
        for (int k = 0; k < 4; ++k) {
            const double xx = x(rng), pp = p(rng);
            // The maximiser is v = ∂ₚH(x, p); scan a fine window around it.
            const double v0 = H.dp(xx, pp);
            double best = -1e300;
            for (int i = -20000; i <= 20000; ++i) {
                const double vv = v0 + 1e-4 * i;
                best = std::max(best, pp * vv - legendre(H, xx, vv));
            }
            CHECK(std::abs(best - H.value(xx, pp)) <= 1e-6);
        }
    }
}

TEST_CASE("convexity and compact nonhomogeneity") {
    for (const auto& H : sample_models()) {
        const double X = H.radius();
        for (double x : {-3.0, -1.0, -0.3, 0.0, 0.7, 2.0}) {
            double prev = -1e300;
            for (int i = -60; i <= 60; ++i) {
                const double d = H.dp(x, 0.1 * i);
                CHECK(d > prev);
                prev = d;
            }
        }
        for (double x : {X, X + 0.5, -X, -X - 2.0}) {
            for (double p : {-2.0, 0.0, 1.5}) CHECK(H.dx(x, p) == 0.0);
        }
    }
}

TEST_CASE("critical momentum, K and level momenta of the quartic well") {
    const auto H = ce::quartic_model();
    const auto b = structural_bounds(H);
    CHECK(b.u_lower == doctest::Approx(0.0));
    CHECK(b.u_upper == doctest::Approx(0.0));
    CHECK(b.K == doctest::Approx(1.0));
    const auto lm = level_momenta(H, 0.0, 2.0);
    CHECK(lm.m == doctest::Approx(-2.0));
    CHECK(lm.M == doctest::Approx(2.0));
    CHECK_THROWS_AS(level_momenta(H, 0.0, 1.0), LevelBelowCritical);
    CHECK_THROWS_AS(level_momenta(H, 0.0, 0.5), LevelBelowCritical);
    const auto sb = speed_bounds(H, 2.0);
    CHECK(sb.V == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(sb.v == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("level momenta and speed bounds are monotone in c") {
    for (const auto& H : sample_models()) {
        const auto b = structural_bounds(H);
        double prev_m = 1e300, prev_M = -1e300, prev_v = 1e300, prev_V = -1e300;
        for (int k = 1; k <= 8; ++k) {
            const double c = b.K + 0.25 * k;
            const auto lm = level_momenta(H, b, 0.3, c);
            CHECK(lm.m < prev_m);
            CHECK(lm.M > prev_M);
            prev_m = lm.m;
            prev_M = lm.M;
            const auto sb = speed_bounds(H, b, c);
            CHECK(sb.v < prev_v);
            CHECK(sb.V > prev_V);
            CHECK(sb.v < sb.V);
            prev_v = sb.v;
            prev_V = sb.V;
        }
    }
}

TEST_CASE("ray speed bound for Burgers") {
    const auto H = HamiltonianModel::burgers();
    const auto C = ray_speed_bound(H, 1.0);
    REQUIRE(C.found);
    CHECK(C.rhs == doctest::Approx(1.0));
    CHECK(C.value == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-6));
    double prev = 0.0;
    for (double lw : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const auto c = ray_speed_bound(H, lw);
        CHECK(c.value >= prev);
        prev = c.value;
    }
    const auto flat = ray_speed_bound(ce::quartic_model(), 0.0);
    CHECK(flat.found);
    CHECK(std::isfinite(flat.value));
}

TEST_CASE("reversed model") {
    const auto H = HamiltonianModel::homogeneous({0.0, 0.3, 0.5, 0.0, 1.0 / 12.0});
    const auto R = H.reversed();
    CHECK(R.value(0.2, 0.7) == doctest::Approx(H.value(0.2, -0.7)));
    CHECK(R.dp(0.2, 0.7) == doctest::Approx(-H.dp(0.2, -0.7)));
    const auto RR = R.reversed();
    CHECK(RR.value(0.2, 0.7) == doctest::Approx(H.value(0.2, 0.7)));
    CHECK(critical_momentum(R, 0.0) == doctest::Approx(-critical_momentum(H, 0.0)));
}

TEST_CASE("invalid models are rejected") {
    CHECK_THROWS_AS(HamiltonianModel::homogeneous({0.0, 0.0, 0.0, 1.0}), InvalidModel);
    CHECK_THROWS_AS(HamiltonianModel::homogeneous({0.0, 0.0, -1.0}), InvalidModel);
    CHECK_THROWS_AS(HamiltonianModel::homogeneous({0.0, 0.0, -1.0, 0.0, 0.01}), InvalidModel);
    CHECK_THROWS_AS(Potential({0.0, 0.0, 1.0}, 1.0), InvalidModel);
    CHECK_THROWS_AS(HamiltonianModel::transformed_traffic({1.0, -1.5, 1.0, 0.0, 1.0}), InvalidModel);
}

TEST_CASE("traffic back-transformation reflects space") {
    const auto p = GridProfile(-1.0, 1.0, 4, Layout::Cells, {1.0, 2.0, 3.0, 4.0});
    const auto q = to_traffic_frame(p);
    CHECK(q[0] == 4.0);
    CHECK(q[3] == 1.0);
}
