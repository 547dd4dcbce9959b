#include "hjid/hamiltonian_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hjid/csv.hpp"
#include "hjid/errors.hpp"

namespace hjid {

namespace {

struct StepPlan {
    long steps;
    double h;
    double direction;
};

StepPlan plan(double t, double dt) {
    if (!(dt > 0.0)) throw Error("flow: dt must be positive");
    if (!std::isfinite(t)) throw Error("flow: time must be finite");
    const long steps = t == 0.0 ? 0 : static_cast<long>(std::ceil(std::abs(t) / dt - 1e-9));
    const double h = steps == 0 ? 0.0 : std::abs(t) / static_cast<double>(steps);
    return {steps, h, t < 0.0 ? -1.0 : 1.0};
}

// One RK4 step of the field scaled by `dir` (dir = −1 integrates backward).
template <class Field>
void rk4(Field&& field, std::array<double, 2>& z, double h) {
    const auto k1 = field(z[0], z[1]);
    const auto k2 = field(z[0] + 0.5 * h * k1[0], z[1] + 0.5 * h * k1[1]);
    const auto k3 = field(z[0] + 0.5 * h * k2[0], z[1] + 0.5 * h * k2[1]);
    const auto k4 = field(z[0] + h * k3[0], z[1] + h * k3[1]);
    z[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    z[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
}

template <class OnStep>
PhaseState integrate(const HamiltonianModel& model, double t, double q0, double p0, const FlowOptions& opts,
                     double& drift, OnStep&& on_step) {
    const auto [steps, h, dir] = plan(t, opts.dt);
    auto field = [&model, dir](double q, double p) {
        const auto e = model.eval(q, p);
        return std::array<double, 2>{dir * e.dHdp, -dir * e.dHdx};
    };
    std::array<double, 2> z{q0, p0};
    const double h0 = model.value(q0, p0);
    drift = 0.0;
    for (long k = 1; k <= steps; ++k) {
        rk4(field, z, h);
        if (!std::isfinite(z[0]) || !std::isfinite(z[1])) {
            throw EnergyDriftExceeded(std::numeric_limits<double>::infinity(), opts.drift_tolerance);
        }
        drift = std::max(drift, std::abs(model.value(z[0], z[1]) - h0));
        on_step(k, z[0], z[1], dir * h * static_cast<double>(k));
    }
    if (drift > opts.drift_tolerance) throw EnergyDriftExceeded(drift, opts.drift_tolerance);
    return {z[0], z[1], t};
}

} // namespace

double Trajectory::step() const {
    return samples.size() < 2 ? 0.0 : samples[1].t - samples[0].t;
}

Trajectory flow(const HamiltonianModel& model, double t, double q0, double p0, FlowOptions opts) {
    Trajectory traj;
    const auto steps = plan(t, opts.dt).steps;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
    traj.samples.push_back({q0, p0, 0.0});
    traj.origin = {q0, p0, 0.0};
    traj.endpoint = integrate(model, t, q0, p0, opts, traj.energy_drift,
                              [&](long, double q, double p, double s) { traj.samples.push_back({q, p, s}); });
    if (t < 0.0) {
        std::reverse(traj.samples.begin(), traj.samples.end());
        traj.samples.front().t = t;
    } else if (!traj.samples.empty()) {
        traj.samples.back().t = t;
    }
    return traj;
}

PhaseState flow_endpoint(const HamiltonianModel& model, double t, double q0, double p0, FlowOptions opts) {
    double drift = 0.0;
    return integrate(model, t, q0, p0, opts, drift, [](long, double, double, double) {});
}

ActionEndpoint flow_with_action(const HamiltonianModel& model, double t, double q0, double p0, FlowOptions opts) {
    if (t < 0.0) throw Error("flow_with_action: time must be nonnegative");
    const auto [steps, h, dir] = plan(t, opts.dt);
    (void)dir;
    // State (q, p, a) with ȧ = p·∂ₚH − H = L(q, q̇).
    using V3 = std::array<double, 3>;
    auto field = [&model](const V3& z) {
        const auto e = model.eval(z[0], z[1]);
        return V3{e.dHdp, -e.dHdx, z[1] * e.dHdp - e.H};
    };
    V3 z{q0, p0, 0.0};
    const double h0 = model.value(q0, p0);
    double drift = 0.0;
    for (long k = 0; k < steps; ++k) {
        const V3 k1 = field(z);
        V3 y;
        for (int i = 0; i < 3; ++i) y[i] = z[i] + 0.5 * h * k1[i];
        const V3 k2 = field(y);
        for (int i = 0; i < 3; ++i) y[i] = z[i] + 0.5 * h * k2[i];
        const V3 k3 = field(y);
        for (int i = 0; i < 3; ++i) y[i] = z[i] + h * k3[i];
        const V3 k4 = field(y);
        for (int i = 0; i < 3; ++i) z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        drift = std::max(drift, std::abs(model.value(z[0], z[1]) - h0));
    }
    if (!(drift <= opts.drift_tolerance)) throw EnergyDriftExceeded(drift, opts.drift_tolerance);
    return {{z[0], z[1], t}, z[2]};
}

TangentEndpoint flow_with_tangent(const HamiltonianModel& model, double t, double q0, double p0, double dq0,
                                  double dp0, FlowOptions opts) {
    const auto [steps, h, dir] = plan(t, opts.dt);
    using V4 = std::array<double, 4>;
    auto field = [&model, dir = dir](const V4& z) {
        const auto e = model.eval(z[0], z[1]);
        const auto hs = model.hessian(z[0], z[1]);
        return V4{dir * e.dHdp, -dir * e.dHdx, dir * (hs.xp * z[2] + hs.pp * z[3]),
                  -dir * (hs.xx * z[2] + hs.xp * z[3])};
    };
    V4 z{q0, p0, dq0, dp0};
    const double h0 = model.value(q0, p0);
    double drift = 0.0;
    for (long k = 0; k < steps; ++k) {
        const V4 k1 = field(z);
        V4 y;
        for (int i = 0; i < 4; ++i) y[i] = z[i] + 0.5 * h * k1[i];
        const V4 k2 = field(y);
        for (int i = 0; i < 4; ++i) y[i] = z[i] + 0.5 * h * k2[i];
        const V4 k3 = field(y);
        for (int i = 0; i < 4; ++i) y[i] = z[i] + h * k3[i];
        const V4 k4 = field(y);
        for (int i = 0; i < 4; ++i) z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        drift = std::max(drift, std::abs(model.value(z[0], z[1]) - h0));
    }
    if (!(drift <= opts.drift_tolerance)) throw EnergyDriftExceeded(drift, opts.drift_tolerance);
    return {{z[0], z[1], t}, z[2], z[3]};
}

std::array<double, 4> flow_jacobian(const HamiltonianModel& model, double t, double q0, double p0,
                                    FlowOptions opts) {
    const double h = 1e-6 * (1.0 + std::abs(q0) + std::abs(p0));
    const auto qp = flow_endpoint(model, t, q0 + h, p0, opts);
    const auto qm = flow_endpoint(model, t, q0 - h, p0, opts);
    const auto pp = flow_endpoint(model, t, q0, p0 + h, opts);
    const auto pm = flow_endpoint(model, t, q0, p0 - h, opts);
    const double s = 0.5 / h;
    return {(qp.q - qm.q) * s, (pp.q - pm.q) * s, (qp.p - qm.p) * s, (pp.p - pm.p) * s};
}

void write_trajectory_csv(std::ostream& os, const HamiltonianModel& model, const Trajectory& trajectory) {
    CsvWriter csv(os, {"t", "q", "p", "H"});
    for (const auto& s : trajectory.samples) csv.row({s.t, s.q, s.p, model.value(s.q, s.p)});
}

} // namespace hjid
