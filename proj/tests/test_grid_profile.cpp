#include "doctest.h"

#include <cmath>

#include "hjid/errors.hpp"
#include "hjid/grid_profile.hpp"

using namespace hjid;

TEST_CASE("cell and node layouts") {
    const auto c = GridProfile::sample(-1.0, 1.0, 4, Layout::Cells, [](double x) { return x; });
    CHECK(c.size() == 4);
    CHECK(c.dx() == 0.5);
    CHECK(c.position(0) == -0.75);
    CHECK(c.edge_position(4) == 1.0);
    CHECK(c.left_trace(0) == c[0]);
    CHECK(c.left_trace(2) == c[1]);
    CHECK(c.right_trace(2) == c[2]);
    CHECK(c.right_trace(4) == c[3]);
    const auto n = GridProfile::sample(-1.0, 1.0, 4, Layout::Nodes, [](double x) { return x * x; });
    CHECK(n.size() == 5);
    CHECK(n.position(4) == 1.0);
    CHECK(n.max_abs() == 1.0);
    CHECK(n.lipschitz() == doctest::Approx(1.5));
    CHECK_FALSE(n.same_grid(c));
}

TEST_CASE("interpolation is linear inside and constant outside") {
    const auto n = GridProfile::sample(0.0, 2.0, 2, Layout::Nodes, [](double x) { return 2.0 * x; });
    CHECK(n.interpolate(0.25) == doctest::Approx(0.5));
    CHECK(n.interpolate(1.5) == doctest::Approx(3.0));
    CHECK(n.interpolate(-5.0) == 0.0);
    CHECK(n.interpolate(5.0) == 4.0);
}

TEST_CASE("distances") {
    const auto u = GridProfile::sample(0.0, 1.0, 10, Layout::Cells, [](double) { return 1.0; });
    const auto v = GridProfile::sample(0.0, 1.0, 10, Layout::Cells, [](double) { return 0.5; });
    CHECK(l1_distance(u, v, 0.0, 1.0) == doctest::Approx(0.5));
    CHECK(l1_distance(u, [](double) { return 0.0; }, 0.0, 0.5) == doctest::Approx(0.5));
    CHECK(sup_distance(u, v) == doctest::Approx(0.5));
}

TEST_CASE("invalid grids") {
    CHECK_THROWS_AS(GridProfile(1.0, 0.0, 4, Layout::Cells, std::vector<double>(4)), InvalidGrid);
    CHECK_THROWS_AS(GridProfile(0.0, 1.0, 4, Layout::Nodes, std::vector<double>(4)), InvalidGrid);
    CHECK_THROWS_AS(GridProfile(0.0, 1.0, 0, Layout::Cells, {}), InvalidGrid);
}
