#include "hjid/rays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hjid/csv.hpp"
#include "hjid/errors.hpp"

namespace hjid {

double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size() == 0 ? 0 : f.size() - 1; // intervals
    if (n == 0) return 0.0;
    if (n == 1) return 0.5 * h * (f[0] + f[1]);
    if (n == 2) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
    std::size_t even = n % 2 == 0 ? n : n - 3;
    double total = 0.0;
    if (even > 0) {
        double s = f[0] + f[even];
        for (std::size_t i = 1; i < even; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
        total = h / 3.0 * s;
    }
    if (even != n) {
        total += 3.0 * h / 8.0 * (f[even] + 3.0 * f[even + 1] + 3.0 * f[even + 2] + f[even + 3]);
    }
    return total;
}

ActionQuadratures action_quadratures(const HamiltonianModel& model, const Trajectory& trajectory) {
    const auto& s = trajectory.samples;
    std::vector<double> lag(s.size());
    std::vector<double> ham(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto e = model.eval(s[i].q, s[i].p);
        lag[i] = legendre(model, s[i].q, e.dHdp);
        ham[i] = s[i].p * e.dHdp - e.H;
    }
    const double h = trajectory.step();
    return {simpson(lag, h), simpson(ham, h)};
}

double action(const HamiltonianModel& model, const Trajectory& trajectory) {
    return action_quadratures(model, trajectory).lagrangian_form;
}

namespace {

Ray make_ray(const HamiltonianModel& model, Trajectory traj) {
    Ray ray;
    ray.action = action(model, traj);
    ray.trajectory = std::move(traj);
    return ray;
}

} // namespace

Ray shoot(const HamiltonianModel& model, double T, double x_o, double x_T, ShootOptions opts) {
    if (!(T > 0.0)) throw Error("shoot: T must be positive");
    const auto bounds = structural_bounds(model);
    auto miss = [&](double p0) { return flow_endpoint(model, T, x_o, p0, opts.flow).q - x_T; };

    double span = std::max(1.0, std::abs(bounds.K));
    double lo = 0.0;
    double hi = 0.0;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 60) throw ShootFailed("shoot: no level set brackets the target", lo, hi);
        const double c = bounds.K + span;
        span *= 2.0;
        const auto sb = speed_bounds(model, bounds, c);
        if (x_o + sb.V * T < x_T || x_o + sb.v * T > x_T) continue;
        const auto level = level_momenta(model, bounds, x_o, c);
        if (miss(level.m) <= 0.0 && miss(level.M) >= 0.0) {
            lo = level.m;
            hi = level.M;
            break;
        }
    }

    // Newton on p0 ↦ q(T) − x_T with the tangent flow, kept inside the bracket.
    double p = 0.5 * (lo + hi);
    for (int it = 0; it < opts.max_iter; ++it) {
        const auto tan = flow_with_tangent(model, T, x_o, p, 0.0, 1.0, opts.flow);
        const double r = tan.state.q - x_T;
        if (std::abs(r) <= opts.tolerance) {
            return make_ray(model, flow(model, T, x_o, p, opts.flow));
        }
        if (r < 0.0) {
            lo = p;
        } else {
            hi = p;
        }
        double next = p - r / tan.dq;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (hi - lo <= std::numeric_limits<double>::epsilon() * (1.0 + std::abs(p))) break;
        p = next;
    }
    throw ShootFailed("shoot: residual above tolerance after max iterations", lo, hi);
}

Ray backward_characteristic(const HamiltonianModel& model, double T, double x, double p_T, FlowOptions opts) {
    if (!(T > 0.0)) throw Error("backward_characteristic: T must be positive");
    Trajectory traj = flow(model, -T, x, p_T, opts);
    for (auto& s : traj.samples) s.t += T;
    traj.origin = traj.samples.front();
    traj.endpoint = traj.samples.back();
    return make_ray(model, std::move(traj));
}

GridProfile pi_map(const HamiltonianModel& model, double T, const GridProfile& w, Trace trace, FlowOptions opts) {
    if (!(T > 0.0)) throw Error("pi_map: T must be positive");
    std::vector<double> feet(w.n() + 1);
    for (std::size_t i = 0; i <= w.n(); ++i) {
        const double p_T = trace == Trace::Left ? w.left_trace(i) : w.right_trace(i);
        feet[i] = flow_endpoint(model, -T, w.edge_position(i), p_T, opts).q;
    }
    return GridProfile(w.x_min(), w.x_max(), w.n(), Layout::Nodes, std::move(feet));
}

double extend_linearly(const GridProfile& W, double x) {
    const std::size_t m = W.size();
    if (m < 2) return W[0];
    const double a = W.position(0);
    const double b = W.position(m - 1);
    if (x < a) return W[0] + (x - a) * (W[1] - W[0]) / (W.position(1) - a);
    if (x > b) return W[m - 1] + (x - b) * (W[m - 1] - W[m - 2]) / (b - W.position(m - 2));
    return W.interpolate(x);
}

namespace {

struct RowScan {
    GraphRow row;
    std::vector<GraphPair> pairs;
};

struct Scanner {
    const HamiltonianModel& model;
    double T;
    const GridProfile& W;
    GraphOptions opts;
    StructuralBounds bounds;
    double reach;

    Scanner(const HamiltonianModel& m, double t, const GridProfile& w, GraphOptions o)
        : model(m), T(t), W(w), opts(o), bounds(structural_bounds(m)) {
        reach = opts.reach > 0.0 ? opts.reach : T * ray_speed_bound(m, w).value;
    }

    // Momentum range whose rays cover [x_o − reach, x_o + reach] at time T.
    std::pair<double, double> bracket(double x_o) const {
        double span = std::max(1.0, std::abs(bounds.K));
        for (int attempt = 0; attempt < 60; ++attempt, span *= 2.0) {
            const double c = bounds.K + span;
            const auto sb = speed_bounds(model, bounds, c);
            if (sb.V * T >= reach && sb.v * T <= -reach) {
                const auto level = level_momenta(model, bounds, x_o, c);
                return {level.m, level.M};
            }
        }
        throw Error("sample_graph: could not bracket the reachable range");
    }

    RowScan scan(double x_o, double target, bool keep_pairs) const {
        const auto [lo, hi] = bracket(x_o);
        const std::size_t np = std::max<std::size_t>(opts.momentum_points, 2);
        std::vector<ActionEndpoint> ends(np);
        std::vector<double> momenta(np);
        std::vector<double> values(np);
        RowScan out;
        out.row.x_o = x_o;
        out.row.best_value = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < np; ++k) {
            momenta[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(np - 1);
            ends[k] = flow_with_action(model, T, x_o, momenta[k], opts.flow);
            values[k] = extend_linearly(W, ends[k].state.q) - ends[k].action;
            if (values[k] > out.row.best_value) {
                out.row.best_value = values[k];
                out.row.best_x_T = ends[k].state.q;
                out.row.best_p_o = momenta[k];
            }
        }
        if (!keep_pairs) return out;
        // A grid maximum above U*(x_o) means U* is slightly low; compare with the maximum then.
        target = std::max(target, out.row.best_value);
        const double tol = opts.rel_tol * (1.0 + std::abs(target));
        out.row.x_T_min = std::numeric_limits<double>::infinity();
        out.row.x_T_max = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < np; ++k) {
            if (values[k] < target - tol) continue;
            out.pairs.push_back({x_o, ends[k].state.q, momenta[k], ends[k].action});
            out.row.x_T_min = std::min(out.row.x_T_min, ends[k].state.q);
            out.row.x_T_max = std::max(out.row.x_T_max, ends[k].state.q);
        }
        out.row.pairs = out.pairs.size();
        return out;
    }
};

} // namespace

GraphSample sample_graph(const HamiltonianModel& model, double T, const GridProfile& W, const GridProfile& U_star,
                         GraphOptions opts) {
    if (!(T > 0.0)) throw Error("sample_graph: T must be positive");
    const Scanner scanner(model, T, W, opts);
    GraphSample graph;
    graph.distance_bound = scanner.reach;
    const std::size_t stride = std::max<std::size_t>(opts.row_stride, 1);
    for (std::size_t i = 0; i < U_star.size(); i += stride) {
        auto scan = scanner.scan(U_star.position(i), U_star[i], true);
        if (scan.pairs.empty()) ++graph.empty_rows;
        for (const auto& pr : scan.pairs) graph.max_distance = std::max(graph.max_distance, std::abs(pr.x_T - pr.x_o));
        graph.pairs.insert(graph.pairs.end(), scan.pairs.begin(), scan.pairs.end());
        graph.rows.push_back(scan.row);
    }
    // x_o < y_o must give x_T ≤ y_T: compare each row's smallest endpoint with
    // the largest endpoint seen in earlier rows.
    double running_max = -std::numeric_limits<double>::infinity();
    for (const auto& row : graph.rows) {
        if (row.pairs == 0) continue;
        if (row.x_T_min < running_max) {
            ++graph.monotonicity_violations;
            graph.max_monotonicity_violation = std::max(graph.max_monotonicity_violation, running_max - row.x_T_min);
        }
        running_max = std::max(running_max, row.x_T_max);
    }
    return graph;
}

GridProfile ray_enumeration_u_star(const HamiltonianModel& model, double T, const GridProfile& W,
                                   GraphOptions opts) {
    if (!(T > 0.0)) throw Error("ray_enumeration_u_star: T must be positive");
    const Scanner scanner(model, T, W, opts);
    std::vector<double> values(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) values[i] = scanner.scan(W.position(i), 0.0, false).row.best_value;
    return GridProfile(W.x_min(), W.x_max(), W.n(), W.layout(), std::move(values));
}

void write_graph_csv(std::ostream& os, const GraphSample& graph) {
    CsvWriter csv(os, {"x_o", "x_T", "p_o", "action"});
    for (const auto& pr : graph.pairs) csv.row({pr.x_o, pr.x_T, pr.p_o, pr.action});
}

void write_pi_csv(std::ostream& os, const GridProfile& pi) {
    CsvWriter csv(os, {"x", "pi"});
    for (std::size_t i = 0; i < pi.size(); ++i) csv.row({pi.position(i), pi[i]});
}

} // namespace hjid
