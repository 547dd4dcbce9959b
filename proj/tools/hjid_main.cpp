#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hjid/config.hpp"
#include "hjid/counterexample.hpp"
#include "hjid/csv.hpp"
#include "hjid/errors.hpp"
#include "hjid/inverse_design.hpp"
#include "hjid/pde_solvers.hpp"
#include "hjid/rays.hpp"
#include "hjid/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace hjid;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitSolver = 2;
constexpr int kExitUsage = 64;

struct Overrides {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<long> grid_n;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<double> T;
    std::optional<double> cfl;
    std::optional<double> dt_ode;
    std::optional<double> tol_drift;
    std::optional<double> tol_shoot;
    std::optional<double> tol_reach;
    std::optional<double> tol_membership;
    std::optional<double> tol_graph;
    std::optional<double> tol_delta;
};

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.out) cfg.output_dir = *o.out;
    if (o.grid_n) {
        if (*o.grid_n < 0) throw ConfigError("--grid-n must be nonnegative");
        cfg.grid.n = static_cast<std::size_t>(*o.grid_n);
    }
    if (o.x_min) cfg.grid.x_min = *o.x_min;
    if (o.x_max) cfg.grid.x_max = *o.x_max;
    if (o.T) cfg.time.T = *o.T;
    if (o.cfl) cfg.time.cfl = *o.cfl;
    if (o.dt_ode) cfg.time.dt_ode = *o.dt_ode;
    if (o.tol_drift) cfg.tol.drift = *o.tol_drift;
    if (o.tol_shoot) cfg.tol.shoot = *o.tol_shoot;
    if (o.tol_reach) cfg.tol.reach = *o.tol_reach;
    if (o.tol_membership) cfg.tol.membership = *o.tol_membership;
    if (o.tol_graph) cfg.tol.graph = *o.tol_graph;
    if (o.tol_delta) cfg.tol.delta = *o.tol_delta;
    cfg.validate();
    return cfg;
}

GridProfile load_profile(const std::string& path, const RunConfig& cfg, Layout layout) {
    return resample(read_csv_file(path), cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n, layout);
}

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path.string() + "'");
    return os;
}

int cmd_evolve(const RunConfig& cfg, const std::string& equation, const std::string& datum) {
    const auto model = cfg.model();
    const bool cl = equation == "cl";
    const auto start = load_profile(datum, cfg, cl ? Layout::Cells : Layout::Nodes);
    EvolveOptions opts{cfg.time.cfl, cfg.time.output_times};
    const auto field = cl ? evolve_cl(model, start, cfg.time.T, opts) : evolve_hj(model, start, cfg.time.T, opts);
    write_field(cfg.output_dir, field, cl ? "u" : "U", cl ? "u" : "U");
    std::cout << "steps: " << field.steps << '\n';
    if (cl) {
        if (std::isnan(field.first_shock_time)) {
            std::cout << "first shock: none\n";
        } else {
            std::cout << "first shock: t = " << format_double(field.first_shock_time) << '\n';
        }
    }
    return 0;
}

int cmd_invert(const RunConfig& cfg, const std::string& W_path, const std::string& U0_path, bool cl_data) {
    const auto model = cfg.model();
    const Layout layout = cl_data ? Layout::Cells : Layout::Nodes;
    auto target = load_profile(W_path, cfg, layout);
    std::optional<GridProfile> candidate;
    if (!U0_path.empty()) candidate = load_profile(U0_path, cfg, layout);

    InverseDesignOptions opts;
    opts.cfl = cfg.time.cfl;
    opts.tol_reach = cfg.tol.reach;
    opts.tol_membership = cfg.tol.membership;
    opts.flow = {std::max(cfg.time.dt_ode, 1e-3), 1e-6};
    const GridProfile W = cl_data ? primitive(target, 0.0) : target;
    InverseDesignAnalyzer analyzer(model, cfg.time.T, W, opts);
    std::optional<GridProfile> U0;
    if (candidate) U0 = cl_data ? primitive(*candidate, analyzer.u_star()[0]) : *candidate;
    const auto report = analyzer.report(U0);

    const fs::path dir = cfg.output_dir;
    auto json = open_out(dir / "report.json");
    json << report_json(report) << '\n';
    auto us = open_out(dir / "u_star.csv");
    write_profile_csv(us, report.U_star, "U_star");
    auto dus = open_out(dir / "u_star_derivative.csv");
    write_profile_csv(dus, derivative(report.U_star), "u_star");
    if (report.reach.reachable) {
        auto pi = open_out(dir / "pi.csv");
        write_pi_csv(pi, pi_map(model, cfg.time.T, derivative(W), Trace::Left, opts.flow));
    }
    std::cout << "reachable: " << (report.reach.reachable ? "yes" : "no") << " (residual "
              << format_double(report.reach.residual) << ", tolerance " << format_double(report.reach.tolerance)
              << ")\n";
    if (report.membership) std::cout << "member: " << (report.membership->member ? "yes" : "no") << '\n';
    return 0;
}

int cmd_counterexample(const RunConfig& cfg, const std::string& what, std::size_t points) {
    namespace ce = hjid::counterexample;
    const fs::path dir = cfg.output_dir;
    if (what == "period") {
        std::vector<double> ps;
        for (std::size_t i = 0; i < points; ++i) {
            ps.push_back(0.05 + (1.40 - 0.05) * static_cast<double>(i) / static_cast<double>(points - 1));
        }
        const auto table = ce::period_table(ps);
        auto os = open_out(dir / "period.csv");
        ce::write_period_csv(os, table);
        std::cout << "min period: " << format_double(table.periods.front()) << " (limit "
                  << format_double(ce::period_limit()) << ")\n";
    } else if (what == "portrait") {
        auto os = open_out(dir / "portrait.csv");
        ce::write_phase_portrait(os, {0.25, 0.5, 0.75, 1.0, 1.25, std::sqrt(2.0), 1.6, 2.0}, cfg.time.T);
    } else if (what == "exact") {
        std::vector<double> times = cfg.time.output_times;
        times.push_back(cfg.time.T);
        std::vector<GridProfile> profiles;
        for (double t : times) {
            profiles.push_back(ce::exact_profile(t, cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n, {{1e-3, cfg.tol.drift}, cfg.tol.delta}));
        }
        auto index = open_out(dir / "exact_index.csv");
        index << "t,filename\n";
        for (std::size_t k = 0; k < times.size(); ++k) {
            const std::string name = "exact_" + std::to_string(k) + ".csv";
            auto os = open_out(dir / name);
            write_profile_csv(os, profiles[k], "u");
            index << format_double(times[k]) << ',' << name << '\n';
        }
    } else if (what == "sturm") {
        const auto cert = ce::chicone_certificate();
        std::ostringstream report;
        ce::write_sturm_report(report, cert);
        auto os = open_out(dir / "sturm.txt");
        os << report.str();
        std::cout << report.str();
        return cert.holds ? 0 : kExitSolver;
    } else if (what == "shock") {
        const double jump = ce::shock_trace(cfg.time.T);
        std::cout << "shock jump at t = " << format_double(cfg.time.T) << ": " << format_double(jump) << '\n';
        auto os = open_out(dir / "shock.csv");
        CsvWriter csv(os, {"t", "jump"});
        csv.row({cfg.time.T, jump});
    } else {
        throw ConfigError("unknown counterexample selector '" + what + "'");
    }
    return 0;
}

int cmd_plot(const RunConfig& cfg, const std::vector<std::string>& files, const std::string& title) {
    if (files.empty()) throw ConfigError("plot: no series given");
    std::vector<Series> series;
    for (const auto& f : files) {
        auto s = series_from_csv_file(f);
        series.insert(series.end(), s.begin(), s.end());
    }
    PlotOptions opts;
    opts.title = title;
    const std::string svg = render_svg(series, opts);
    auto os = open_out(fs::path(cfg.output_dir) / "plot.svg");
    os << svg;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamilton-Jacobi / conservation-law inverse design toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--config", o.config_path, "JSON run configuration");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--grid-n", o.grid_n, "Number of grid cells (>= 16)");
    app.add_option("--x-min", o.x_min, "Left end of the window");
    app.add_option("--x-max", o.x_max, "Right end of the window");
    app.add_option("--T", o.T, "Final time");
    app.add_option("--cfl", o.cfl, "CFL number in (0, 1)");
    app.add_option("--dt-ode", o.dt_ode, "Hamiltonian flow step");
    app.add_option("--tol-drift", o.tol_drift, "Energy drift tolerance");
    app.add_option("--tol-shoot", o.tol_shoot, "Shooting residual tolerance");
    app.add_option("--tol-reach", o.tol_reach, "Reachability tolerance (<= 0: automatic)");
    app.add_option("--tol-membership", o.tol_membership, "Membership tolerance (<= 0: automatic)");
    app.add_option("--tol-graph", o.tol_graph, "Relative tolerance for graph maximisers");
    app.add_option("--tol-delta", o.tol_delta, "Delta-map root tolerance");

    std::string equation = "cl";
    std::string datum;
    auto* evolve = app.add_subcommand("evolve", "Forward solve of the conservation law or Hamilton-Jacobi equation");
    evolve->add_option("--equation", equation, "cl or hj")->check(CLI::IsMember({"cl", "hj"}));
    evolve->add_option("datum", datum, "Initial datum CSV (x,value)")->required();

    std::string W_path;
    std::string U0_path;
    bool cl_data = false;
    auto* invert = app.add_subcommand("invert", "Inverse design report for a target profile");
    invert->add_option("W", W_path, "Target profile CSV (x,value)")->required();
    invert->add_option("--U0", U0_path, "Candidate initial datum to test for membership");
    invert->add_flag("--cl", cl_data, "Profiles are conservation-law data (derivatives)");

    std::string what;
    std::size_t points = 50;
    auto* counter = app.add_subcommand("counterexample", "Quartic-well counterexample artifacts");
    counter->add_option("what", what, "period | portrait | exact | sturm | shock")
        ->required()
        ->check(CLI::IsMember({"period", "portrait", "exact", "sturm", "shock"}));
    counter->add_option("--points", points, "Period table size")->check(CLI::Range(2, 100000));

    std::vector<std::string> files;
    std::string title;
    auto* plot = app.add_subcommand("plot", "Overlay CSV series in an SVG");
    plot->add_option("series", files, "CSV files (first column x)");
    plot->add_option("--title", title, "Plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const RunConfig cfg = resolve(o);
        if (evolve->parsed()) return cmd_evolve(cfg, equation, datum);
        if (invert->parsed()) return cmd_invert(cfg, W_path, U0_path, cl_data);
        if (counter->parsed()) return cmd_counterexample(cfg, what, points);
        if (plot->parsed()) return cmd_plot(cfg, files, title);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitUsage;
}
