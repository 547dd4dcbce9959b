#include "hjid/pde_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hjid/csv.hpp"
#include "hjid/errors.hpp"

namespace hjid {

namespace {

void validate(double T, double cfl, const char* who) {
    if (!(T > 0.0) || !std::isfinite(T)) throw Error(std::string(who) + ": T must be positive");
    if (!(cfl > 0.0 && cfl < 1.0)) throw Error(std::string(who) + ": cfl must lie in (0, 1)");
}

// Sorted stop times: requested outputs inside (0, T), then T.
std::vector<double> stop_times(const std::vector<double>& requested, double T) {
    std::vector<double> stops;
    for (double t : requested) {
        if (t > 0.0 && t < T) stops.push_back(t);
    }
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    stops.push_back(T);
    return stops;
}

// max |u| admissible before declaring blow-up: 10× the largest level momentum
// at the level sup H(x, u0).
double blowup_bound(const HamiltonianModel& model, const GridProfile& u0) {
    const auto bounds = structural_bounds(model);
    double level = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u0.size(); ++i) level = std::max(level, model.value(u0.position(i), u0[i]));
    const double c = std::max(level, bounds.K + 1e-3 * (1.0 + std::abs(bounds.K)));
    double bound = u0.max_abs();
    for (double x : structural_x_samples(model)) {
        const auto lm = level_momenta(model, bounds, x, c);
        bound = std::max({bound, std::abs(lm.m), std::abs(lm.M)});
    }
    return 10.0 * bound;
}

double godunov_flux(const HamiltonianModel& model, double x, double u_crit, double uL, double uR) {
    if (uL <= uR) return model.value(x, std::clamp(u_crit, uL, uR));
    return std::max(model.value(x, uL), model.value(x, uR));
}

} // namespace

std::vector<std::size_t> detect_shocks(const GridProfile& u) {
    std::vector<std::size_t> shocks;
    const std::size_t n = u.size();
    if (n < 2) return shocks;
    const double dx = u.dx();
    auto slope = [&](std::ptrdiff_t j) {
        if (j < 0 || j + 1 >= static_cast<std::ptrdiff_t>(n)) return 0.0;
        return std::abs(u[static_cast<std::size_t>(j) + 1] - u[static_cast<std::size_t>(j)]) / dx;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double jump = u[i] - u[i + 1];
        if (jump <= 0.1) continue;
        double lip = 0.0;
        const auto c = static_cast<std::ptrdiff_t>(i);
        for (std::ptrdiff_t k = 2; k <= 4; ++k) lip = std::max({lip, slope(c - k), slope(c + k)});
        if (jump > std::max(10.0 * dx * lip, 0.1)) shocks.push_back(i);
    }
    return shocks;
}

SpaceTimeField evolve_cl(const HamiltonianModel& model, const GridProfile& u0, double T, EvolveOptions opts) {
    validate(T, opts.cfl, "evolve_cl");
    if (u0.layout() != Layout::Cells) throw InvalidGrid("evolve_cl: expects a cell profile");
    const std::size_t n = u0.size();
    const double dx = u0.dx();
    const double limit = blowup_bound(model, u0);

    std::vector<double> xc(n);
    std::vector<double> crit(n);
    for (std::size_t i = 0; i < n; ++i) {
        xc[i] = u0.position(i);
        crit[i] = critical_momentum(model, xc[i]);
    }

    GridProfile u = u0;
    auto& v = u.mutable_values();
    std::vector<double> flux_left(n);
    std::vector<double> flux_right(n);

    SpaceTimeField field;
    field.times.push_back(0.0);
    field.profiles.push_back(u);
    field.shock_cells.push_back(detect_shocks(u));
    if (!field.shock_cells.back().empty()) field.first_shock_time = 0.0;

    auto source = [&](double h) {
        for (std::size_t i = 0; i < n; ++i) {
            const double k1 = -model.dx(xc[i], v[i]);
            const double mid = v[i] + 0.5 * h * k1;
            v[i] += h * -model.dx(xc[i], mid);
        }
    };

    double t = 0.0;
    for (double stop : stop_times(opts.output_times, T)) {
        while (t < stop) {
            double speed = 0.0;
            for (std::size_t i = 0; i < n; ++i) speed = std::max(speed, std::abs(model.dp(xc[i], v[i])));
            double dt = opts.cfl * dx / std::max(speed, 1e-12);
            if (t + dt >= stop - 1e-12 * stop) dt = stop - t;

            source(0.5 * dt);
            for (std::size_t i = 0; i < n; ++i) {
                const double uL = i == 0 ? v[0] : v[i - 1];
                const double uR = i + 1 == n ? v[n - 1] : v[i + 1];
                flux_left[i] = godunov_flux(model, xc[i], crit[i], uL, v[i]);
                flux_right[i] = godunov_flux(model, xc[i], crit[i], v[i], uR);
            }
            for (std::size_t i = 0; i < n; ++i) v[i] -= dt / dx * (flux_right[i] - flux_left[i]);
            source(0.5 * dt);

            t = (dt == stop - t) ? stop : t + dt;
            ++field.steps;
            const double peak = u.max_abs();
            if (!(peak <= limit)) {
                throw UnstableBlowup("evolve_cl: max|u| = " + std::to_string(peak) + " exceeds " +
                                     std::to_string(limit) + " at t = " + std::to_string(t));
            }
            if (std::isnan(field.first_shock_time) && !detect_shocks(u).empty()) field.first_shock_time = t;
        }
        field.times.push_back(t);
        field.profiles.push_back(u);
        field.shock_cells.push_back(detect_shocks(u));
    }
    return field;
}

SpaceTimeField evolve_hj(const HamiltonianModel& model, const GridProfile& U0, double T, EvolveOptions opts) {
    validate(T, opts.cfl, "evolve_hj");
    if (U0.layout() != Layout::Nodes) throw InvalidGrid("evolve_hj: expects a node profile");
    const std::size_t m = U0.size();
    const double dx = U0.dx();

    std::vector<double> xs(m);
    for (std::size_t j = 0; j < m; ++j) xs[j] = U0.position(j);

    GridProfile U = U0;
    auto& v = U.mutable_values();
    std::vector<double> hhat(m);
    std::vector<double> alpha(m);

    SpaceTimeField field;
    field.times.push_back(0.0);
    field.profiles.push_back(U);
    field.shock_cells.emplace_back();

    const double span0 = *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
    const double limit = 1e6 * (1.0 + span0 + U0.max_abs());
    double t = 0.0;
    for (double stop : stop_times(opts.output_times, T)) {
        while (t < stop) {
            double amax = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                double pm = j == 0 ? (v[1] - v[0]) / dx : (v[j] - v[j - 1]) / dx;
                double pp = j + 1 == m ? (v[j] - v[j - 1]) / dx : (v[j + 1] - v[j]) / dx;
                const auto em = model.eval(xs[j], pm);
                const auto ep = model.eval(xs[j], pp);
                alpha[j] = std::max(std::abs(em.dHdp), std::abs(ep.dHdp));
                amax = std::max(amax, alpha[j]);
                hhat[j] = model.value(xs[j], 0.5 * (pm + pp)) - 0.5 * alpha[j] * (pp - pm);
            }
            double dt = opts.cfl * dx / std::max(amax, 1e-12);
            if (t + dt >= stop - 1e-12 * stop) dt = stop - t;
            for (std::size_t j = 0; j < m; ++j) v[j] -= dt * hhat[j];
            t = (dt == stop - t) ? stop : t + dt;
            ++field.steps;
            for (double val : v) {
                if (!std::isfinite(val) || std::abs(val) > limit) {
                    throw UnstableBlowup("evolve_hj: solution left the admissible range at t = " +
                                         std::to_string(t));
                }
            }
        }
        field.times.push_back(t);
        field.profiles.push_back(U);
        field.shock_cells.emplace_back();
    }
    return field;
}

GridProfile evolve_hj_reversed(const HamiltonianModel& model, const GridProfile& W, double T, double cfl) {
    std::vector<double> neg(W.values().begin(), W.values().end());
    for (double& x : neg) x = -x;
    const GridProfile start(W.x_min(), W.x_max(), W.n(), W.layout(), std::move(neg));
    GridProfile out = evolve_hj(model.reversed(), start, T, cfl).final_profile();
    for (double& x : out.mutable_values()) x = -x;
    return out;
}

GridProfile derivative(const GridProfile& U) {
    if (U.layout() != Layout::Nodes) throw InvalidGrid("derivative: expects a node profile");
    std::vector<double> d(U.n());
    for (std::size_t i = 0; i < U.n(); ++i) d[i] = (U[i + 1] - U[i]) / U.dx();
    return GridProfile(U.x_min(), U.x_max(), U.n(), Layout::Cells, std::move(d));
}

GridProfile primitive(const GridProfile& u, double anchor) {
    if (u.layout() != Layout::Cells) throw InvalidGrid("primitive: expects a cell profile");
    std::vector<double> U(u.n() + 1);
    U[0] = anchor;
    for (std::size_t i = 0; i < u.n(); ++i) U[i + 1] = U[i] + u[i] * u.dx();
    return GridProfile(u.x_min(), u.x_max(), u.n(), Layout::Nodes, std::move(U));
}

void write_field(const std::filesystem::path& dir, const SpaceTimeField& field, const std::string& prefix,
                 const std::string& value_name) {
    std::filesystem::create_directories(dir);
    const auto index_path = dir / (prefix + "_index.csv");
    std::ofstream index(index_path);
    if (!index) throw IoError("cannot open '" + index_path.string() + "'");
    index << "t,filename,shock_positions\n";
    for (std::size_t k = 0; k < field.times.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%04zu.csv", prefix.c_str(), k);
        const auto path = dir / name;
        std::ofstream os(path);
        if (!os) throw IoError("cannot open '" + path.string() + "'");
        write_profile_csv(os, field.profiles[k], value_name);
        std::ostringstream shocks;
        const auto& prof = field.profiles[k];
        for (std::size_t s = 0; s < field.shock_cells[k].size(); ++s) {
            if (s) shocks << ';';
            shocks << format_double(prof.edge_position(field.shock_cells[k][s] + 1));
        }
        index << format_double(field.times[k]) << ',' << name << ',' << shocks.str() << '\n';
    }
}

} // namespace hjid
