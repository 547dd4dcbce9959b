#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hjid/counterexample.hpp"
#include "hjid/errors.hpp"
#include "hjid/pde_solvers.hpp"
#include "hjid/rays.hpp"

using namespace hjid;
namespace ce = hjid::counterexample;

TEST_CASE("Simpson is exact for cubics with even and odd interval counts") {
    for (std::size_t n : {2u, 3u, 4u, 7u, 10u}) {
        const double h = 1.0 / static_cast<double>(n);
        std::vector<double> f;
        for (std::size_t i = 0; i <= n; ++i) {
            const double x = h * static_cast<double>(i);
            f.push_back(x * x * x - 2.0 * x + 1.0);
        }
        CHECK(simpson(f, h) == doctest::Approx(0.25 - 1.0 + 1.0).epsilon(1e-13));
    }
}

TEST_CASE("action of straight Burgers rays") {
    const auto H = HamiltonianModel::burgers();
    const double T = 1.7, p0 = 0.8;
    const auto tr = flow(H, T, 0.0, p0);
    CHECK(action(H, tr) == doctest::Approx(T * p0 * p0 / 2).epsilon(1e-12));
}

TEST_CASE("action of the stationary quartic ray") {
    const auto H = ce::quartic_model();
    CHECK(action(H, flow(H, 2.0, 1.0, 0.0)) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("Lagrangian and Hamiltonian action quadratures agree") {
    const auto H = ce::quartic_model();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> q(-1.2, 1.2), p(-2.5, 2.5), t(0.2, 2.0);
    for (int k = 0; k < 10; ++k) {
        const auto aq = action_quadratures(H, flow(H, t(rng), q(rng), p(rng)));
        CHECK(std::abs(aq.lagrangian_form - aq.hamiltonian_form) <= 1e-7);
    }
}

TEST_CASE("shooting") {
    const auto B = HamiltonianModel::burgers();
    const auto rb = shoot(B, 2.0, -0.5, 1.1);
    CHECK(rb.initial_momentum() == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(std::abs(rb.end() - 1.1) <= 1e-8);

    const auto H = ce::quartic_model();
    const double T = 0.9;
    const auto r = shoot(H, T, 0.0, ce::q_sharp(T, {1e-4, 1e-7}));
    CHECK(r.initial_momentum() == doctest::Approx(2.0).epsilon(1e-7));

    const auto z = shoot(H, 0.7, 0.0, 0.0);
    CHECK(std::abs(z.end()) <= 1e-8);
    CHECK(z.start() == 0.0);

    std::mt19937 rng(19);
    std::uniform_real_distribution<double> x(-2.0, 2.0);
    for (int k = 0; k < 5; ++k) {
        const double a = x(rng), b = x(rng);
        const auto ray = shoot(H, 1.3, a, b);
        CHECK(std::abs(ray.end() - b) <= 1e-8);
        CHECK(ray.start() == a);
    }
    CHECK_THROWS_AS(shoot(H, 1.0, 0.0, 1.0, {{1e-4, 1e-7}, 1e-8, 1}), ShootFailed);
}

TEST_CASE("backward characteristics") {
    const auto B = HamiltonianModel::burgers();
    const auto rb = backward_characteristic(B, 1.5, 0.4, 0.6);
    CHECK(rb.start() == doctest::Approx(0.4 - 1.5 * 0.6).epsilon(1e-12));
    CHECK(rb.trajectory.samples.front().t == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rb.trajectory.samples.back().t == doctest::Approx(1.5));

    const auto H = ce::quartic_model();
    const double p0 = 0.8;
    const double half = ce::period(p0).value / 2;
    const auto r = backward_characteristic(H, half, 0.0, -p0);
    CHECK(std::abs(r.start()) <= 1e-7);
    CHECK(r.initial_momentum() == doctest::Approx(p0).epsilon(1e-7));

    const auto fwd = flow_endpoint(H, 1.1, r.start(), r.initial_momentum());
    const auto back = backward_characteristic(H, 1.1, fwd.q, fwd.p);
    CHECK(back.start() == doctest::Approx(r.start()).epsilon(1e-9));
}

TEST_CASE("pi map of Burgers profiles") {
    const auto B = HamiltonianModel::burgers();
    const double T = 1.0;
    // Rarefaction clamp(x/T): cell values taken at the right edge so that left traces are exact.
    const std::size_t n = 60;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp((-3.0 + 0.1 * (i + 1.0)) / T, -1.0, 1.0);
    const GridProfile fan(-3.0, 3.0, n, Layout::Cells, v);
    const auto pi = pi_map(B, T, fan);
    for (std::size_t i = 0; i <= n; ++i) {
        if (std::abs(pi.position(i)) <= T) CHECK(std::abs(pi[i]) <= 1e-12);
    }
    const auto shock = GridProfile::sample(-3.0, 3.0, n, Layout::Cells, [](double x) { return x < 0 ? 1.0 : -1.0; });
    const auto left = pi_map(B, T, shock, Trace::Left);
    const auto right = pi_map(B, T, shock, Trace::Right);
    CHECK(left[n / 2] == doctest::Approx(-T));
    CHECK(right[n / 2] == doctest::Approx(T));
}

TEST_CASE("pi map of the quartic exact profile has no gap at the origin") {
    const double T = 1.48;
    const auto w = ce::exact_profile(T, -3.0, 3.0, 200, {}, ce::Sampling::RightEdgeTrace);
    const auto H = ce::quartic_model();
    const auto left = pi_map(H, T, w, Trace::Left);
    const auto right = pi_map(H, T, w, Trace::Right);
    CHECK(std::abs(left[100]) <= 1e-6);
    CHECK(std::abs(right[100]) <= w.dx());
    for (std::size_t i = 0; i + 1 < left.size(); ++i) CHECK(left[i + 1] - left[i] >= -1e-6);
}

TEST_CASE("graph of a smooth Burgers profile is a monotone function") {
    const auto B = HamiltonianModel::burgers();
    const double T = 0.5;
    const auto W = GridProfile::sample(-2.0, 2.0, 40, Layout::Nodes, [](double x) { return 0.3 * std::sin(x); });
    GraphOptions o;
    o.flow = {T / 4, 1e-6};
    o.momentum_points = 801;
    const auto U = ray_enumeration_u_star(B, T, W, o);
    const auto g = sample_graph(B, T, W, U, o);
    CHECK(g.empty_rows == 0);
    CHECK(g.monotonicity_violations == 0);
    CHECK(g.max_distance <= g.distance_bound);
    for (const auto& row : g.rows) CHECK(row.x_T_max - row.x_T_min <= 0.05);
}

TEST_CASE("graph of a rarefaction fills an interval") {
    const auto B = HamiltonianModel::burgers();
    const double T = 1.0;
    const auto W = GridProfile::sample(-3.0, 3.0, 120, Layout::Nodes, [T](double x) {
        return std::abs(x) <= T ? x * x / (2 * T) : std::abs(x) - T / 2;
    });
    GraphOptions o;
    o.flow = {T / 4, 1e-6};
    o.momentum_points = 801;
    const auto U = ray_enumeration_u_star(B, T, W, o);
    for (std::size_t i = 0; i < U.size(); ++i) CHECK(std::abs(U[i] - std::abs(U.position(i))) <= 1e-3);
    const auto g = sample_graph(B, T, W, U, o);
    const auto& mid = g.rows[60];
    CHECK(mid.x_o == doctest::Approx(0.0));
    CHECK(mid.x_T_min <= -0.9 * T);
    CHECK(mid.x_T_max >= 0.9 * T);
    CHECK(g.monotonicity_violations == 0);

    std::ostringstream os;
    write_graph_csv(os, g);
    CHECK(os.str().rfind("x_o,x_T,p_o,action\n", 0) == 0);
    std::ostringstream pos;
    write_pi_csv(pos, pi_map(B, T, derivative(W)));
    CHECK(pos.str().rfind("x,pi\n", 0) == 0);
}
