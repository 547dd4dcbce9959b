#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "hjid/config.hpp"
#include "hjid/csv.hpp"
#include "hjid/errors.hpp"
#include "hjid/svg_plot.hpp"

using namespace hjid;

TEST_CASE("config defaults and overrides") {
    const auto d = config_from_json("{}");
    CHECK(d.grid.n == 2000);
    CHECK(d.time.cfl == 0.45);
    CHECK(d.model().kind() == ModelKind::QuadraticPotential);
    const auto c = config_from_json(R"({"model": {"kind": "burgers"}, "grid": {"x_min": -3, "x_max": 3, "n": 64},
                                        "time": {"T": 0.5, "output_times": [0.25]}, "output_dir": "o"})");
    CHECK(c.grid.n == 64);
    CHECK(c.time.T == 0.5);
    CHECK(c.time.output_times == std::vector<double>{0.25});
    CHECK(c.output_dir == "o");
    CHECK(c.model().value(0.0, 2.0) == doctest::Approx(2.0));
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("invalid configs are rejected") {
    CHECK_THROWS_AS(config_from_json(R"({"grid": {"n": 8}})").validate(), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"time": {"cfl": 1.5}})").validate(), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"grid": {"x_min": 1, "x_max": 0}})").validate(), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"grid": {"m": 8}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"bogus": 1})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(model_from_json(R"({"kind": "unknown"})"), ConfigError);
    CHECK_THROWS_AS(model_from_json(R"({"kind": "quadratic_potential", "potential": "other"})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("CSV round trip is lossless") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    std::vector<double> xs;
    std::ostringstream os;
    {
        CsvWriter w(os, {"a", "b"});
        for (int i = 0; i < 50; ++i) {
            const double a = d(rng), b = std::exp(d(rng) / 100);
            xs.push_back(a);
            xs.push_back(b);
            w.row({a, b});
        }
    }
    std::istringstream is(os.str());
    const auto t = read_csv(is);
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(t.rows[i][0] == xs[2 * i]);
        CHECK(t.rows[i][1] == xs[2 * i + 1]);
    }
    CHECK(t.column("b") == 1);
}

TEST_CASE("malformed CSV") {
    std::istringstream bad("x,u\n1,2\n3,abc\n");
    CHECK_THROWS_AS(read_csv(bad), IoError);
    std::istringstream ragged("x,u\n1,2,3\n");
    CHECK_THROWS_AS(read_csv(ragged), IoError);
    CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), IoError);
}

TEST_CASE("resampling a profile table") {
    std::istringstream is("x,u\n-1,0\n0,1\n1,3\n");
    const auto t = read_csv(is);
    const auto g = resample(t, -2.0, 2.0, 8, Layout::Nodes);
    CHECK(g[0] == 0.0);
    CHECK(g[3] == doctest::Approx(0.5));
    CHECK(g[5] == doctest::Approx(2.0));
    CHECK(g[8] == 3.0);
}

TEST_CASE("profile CSV output") {
    const auto g = GridProfile::sample(0.0, 1.0, 4, Layout::Cells, [](double x) { return x; });
    std::ostringstream os;
    write_profile_csv(os, g, "u");
    std::istringstream is(os.str());
    const auto t = read_csv(is);
    CHECK(t.header == std::vector<std::string>{"x", "u"});
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0][0] == 0.125);
    CHECK(t.rows[0][1] == 0.125);
}

TEST_CASE("SVG plots are well formed and deterministic") {
    std::vector<Series> s{{"sin", {}, {}}, {"cos", {}, {}}};
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.1 * i;
        s[0].x.push_back(x);
        s[0].y.push_back(std::sin(x));
        s[1].x.push_back(x);
        s[1].y.push_back(std::cos(x));
    }
    const auto svg = render_svg(s, {"waves"});
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("waves") != std::string::npos);
    std::size_t lines = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++lines;
    CHECK(lines == 2);
    CHECK(render_svg(s, {"waves"}) == svg);
}
