#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "hjid/hamiltonian_model.hpp"

namespace hjid {

struct PhaseState {
    double q;
    double p;
    double t;
};

struct FlowOptions {
    double dt = 1e-4;
    /// Maximum admissible |H(q(t), p(t)) − H(q0, p0)|; exceeding it throws.
    double drift_tolerance = 1e-7;
};

/// Time-sampled solution of q̇ = ∂ₚH, ṗ = −∂ₓH. Samples are stored in
/// increasing time with constant spacing; for a backward flow the first sample
/// is the state at the (negative) target time and the last one sits at t = 0.
struct Trajectory {
    std::vector<PhaseState> samples;
    double energy_drift = 0.0;
    /// ℱ(t, q0, p0): the state reached at the requested time.
    PhaseState endpoint{};
    /// The initial condition (time 0).
    PhaseState origin{};

    double step() const;
};

/// Integrates from (q0, p0) at time 0 to time t (t < 0 integrates backward by
/// reversing the field). Classical RK4 with |t|/dt rounded up to whole steps.
Trajectory flow(const HamiltonianModel& model, double t, double q0, double p0, FlowOptions opts = {});

/// Same integration without storing the samples.
PhaseState flow_endpoint(const HamiltonianModel& model, double t, double q0, double p0, FlowOptions opts = {});

struct ActionEndpoint {
    PhaseState state;
    /// ∫ L(q, q̇) ds over the integration interval, accumulated as p·∂ₚH − H.
    double action;
};

/// Forward flow (t ≥ 0) that also integrates the action along the ray.
ActionEndpoint flow_with_action(const HamiltonianModel& model, double t, double q0, double p0,
                                FlowOptions opts = {});

struct TangentEndpoint {
    PhaseState state;
    double dq; // variation of q(t)
    double dp; // variation of p(t)
};

/// Integrates the flow together with its linearisation seeded by (dq0, dp0),
/// giving the directional derivative of ℱ(t, ·) at (q0, p0).
TangentEndpoint flow_with_tangent(const HamiltonianModel& model, double t, double q0, double p0, double dq0,
                                  double dp0, FlowOptions opts = {});

/// ∂(q(t), p(t)) / ∂(q0, p0) by central differences with h = 1e−6·(1 + |q0| + |p0|).
/// Row-major: {∂q/∂q0, ∂q/∂p0, ∂p/∂q0, ∂p/∂p0}.
std::array<double, 4> flow_jacobian(const HamiltonianModel& model, double t, double q0, double p0,
                                    FlowOptions opts = {});

/// CSV with header `t,q,p,H`.
void write_trajectory_csv(std::ostream& os, const HamiltonianModel& model, const Trajectory& trajectory);

} // namespace hjid
