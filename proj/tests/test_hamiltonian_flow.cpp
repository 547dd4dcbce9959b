#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "hjid/counterexample.hpp"
#include "hjid/csv.hpp"
#include "hjid/errors.hpp"
#include "hjid/hamiltonian_flow.hpp"

using namespace hjid;
namespace ce = hjid::counterexample;

TEST_CASE("Burgers rays are straight lines") {
    const auto H = HamiltonianModel::burgers();
    const auto e = flow_endpoint(H, 2.5, 0.3, -0.7);
    CHECK(e.q == doctest::Approx(0.3 - 0.7 * 2.5).epsilon(1e-13));
    CHECK(e.p == doctest::Approx(-0.7));
    const auto b = flow_endpoint(H, -1.5, 0.3, -0.7);
    CHECK(b.q == doctest::Approx(0.3 + 0.7 * 1.5).epsilon(1e-13));
}

TEST_CASE("stationary points of the quartic well") {
    const auto H = ce::quartic_model();
    const auto e = flow_endpoint(H, 3.0, 1.0, 0.0);
    CHECK(e.q == doctest::Approx(1.0));
    CHECK(e.p == doctest::Approx(0.0));
    const auto z = flow_endpoint(H, 3.0, 0.0, 0.0);
    CHECK(z.q == 0.0);
    CHECK(z.p == 0.0);
}

TEST_CASE("trajectory sampling and time reversal") {
    const auto H = ce::quartic_model();
    const auto fwd = flow(H, 0.8, 0.2, 1.1);
    CHECK(fwd.samples.front().t == 0.0);
    CHECK(fwd.samples.back().t == doctest::Approx(0.8));
    CHECK(fwd.step() == doctest::Approx(1e-4));
    const auto back = flow_endpoint(H, -0.8, fwd.endpoint.q, fwd.endpoint.p);
    CHECK(back.q == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(back.p == doctest::Approx(1.1).epsilon(1e-10));
    const auto bw = flow(H, -0.8, 0.2, 1.1);
    CHECK(bw.samples.front().t == doctest::Approx(-0.8));
    CHECK(bw.samples.back().t == 0.0);
    CHECK(bw.samples.back().q == 0.2);
    for (std::size_t i = 1; i < bw.samples.size(); ++i) CHECK(bw.samples[i].t > bw.samples[i - 1].t);
}

TEST_CASE("q' = dH/dp along stored samples") {
    const auto H = ce::quartic_model();
    const auto tr = flow(H, 1.0, -0.4, 1.3);
    const double h = tr.step();
    for (std::size_t i = 1; i + 1 < tr.samples.size(); i += 97) {
        const double qdot = (tr.samples[i + 1].q - tr.samples[i - 1].q) / (2.0 * h);
        CHECK(std::abs(qdot - H.dp(tr.samples[i].q, tr.samples[i].p)) <= 1e-6);
    }
}

TEST_CASE("energy drift on random quartic orbits") {
    const auto H = ce::quartic_model();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> q(-1.5, 1.5), p(-3.0, 3.0), t(-3.0, 3.0);
    for (int k = 0; k < 10; ++k) {
        const auto tr = flow(H, t(rng), q(rng), p(rng));
        CHECK(tr.energy_drift <= 1e-8);
    }
}

TEST_CASE("drift tolerance violations throw") {
    const auto H = ce::quartic_model();
    CHECK_THROWS_AS(flow(H, 2.0, 0.1, 2.5, {0.2, 1e-12}), EnergyDriftExceeded);
}

TEST_CASE("action along the flow accumulates p H_p - H") {
    const auto H = HamiltonianModel::burgers();
    const auto a = flow_with_action(H, 2.0, 0.0, 0.6);
    CHECK(a.action == doctest::Approx(2.0 * 0.18).epsilon(1e-12));
    const auto s = flow_with_action(ce::quartic_model(), 2.0, 1.0, 0.0);
    CHECK(s.action == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("tangent flow matches the finite-difference Jacobian") {
    const auto H = ce::quartic_model();
    const auto J = flow_jacobian(H, 1.2, 0.3, 0.9);
    const auto tq = flow_with_tangent(H, 1.2, 0.3, 0.9, 1.0, 0.0);
    const auto tp = flow_with_tangent(H, 1.2, 0.3, 0.9, 0.0, 1.0);
    CHECK(tq.dq == doctest::Approx(J[0]).epsilon(1e-6));
    CHECK(tp.dq == doctest::Approx(J[1]).epsilon(1e-6));
    CHECK(tq.dp == doctest::Approx(J[2]).epsilon(1e-6));
    CHECK(tp.dp == doctest::Approx(J[3]).epsilon(1e-6));
    // Hamiltonian flows preserve area.
    CHECK(J[0] * J[3] - J[1] * J[2] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("trajectory CSV export") {
    const auto H = HamiltonianModel::burgers();
    std::ostringstream os;
    write_trajectory_csv(os, H, flow(H, 3e-4, 0.0, 1.0));
    std::istringstream is(os.str());
    const auto table = read_csv(is);
    CHECK(table.header == std::vector<std::string>{"t", "q", "p", "H"});
    CHECK(table.rows.size() == 4);
    CHECK(table.rows.back()[1] == doctest::Approx(3e-4));
}
