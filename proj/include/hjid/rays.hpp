#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hjid/grid_profile.hpp"
#include "hjid/hamiltonian_flow.hpp"
#include "hjid/hamiltonian_model.hpp"

namespace hjid {

/// A solution of the Hamiltonian system over [0, T] with its action ∫ L(q, q̇).
struct Ray {
    Trajectory trajectory;
    double action = 0.0;
    double initial_momentum() const { return trajectory.samples.front().p; }
    double start() const { return trajectory.samples.front().q; }
    double end() const { return trajectory.samples.back().q; }
};

struct ActionQuadratures {
    double lagrangian_form;  // Simpson of L(q, ∂ₚH(q, p)) with L from `legendre`
    double hamiltonian_form; // Simpson of p·∂ₚH − H
};

/// Composite Simpson on the uniformly spaced samples (3/8 rule closes an odd
/// interval count).
double simpson(const std::vector<double>& f, double h);

ActionQuadratures action_quadratures(const HamiltonianModel& model, const Trajectory& trajectory);
/// The Lagrangian-form action of a trajectory that solves the Hamiltonian system.
double action(const HamiltonianModel& model, const Trajectory& trajectory);

struct ShootOptions {
    FlowOptions flow{};
    double tolerance = 1e-8;
    int max_iter = 200;
};

/// Two-point ray: q(0) = x_o, |q(T) − x_T| ≤ tolerance. The momentum bracket
/// comes from level sets H = c with x_o + v(c)·T ≤ x_T ≤ x_o + V(c)·T.
Ray shoot(const HamiltonianModel& model, double T, double x_o, double x_T, ShootOptions opts = {});

/// Integrates backward from (q(T), p(T)) = (x, p_T); the returned ray is
/// sampled on [0, T].
Ray backward_characteristic(const HamiltonianModel& model, double T, double x, double p_T, FlowOptions opts = {});

enum class Trace { Left, Right };

/// π_w on the cell edges of `w`: the foot at t = 0 of the backward
/// characteristic from (T, x_i) with terminal momentum w(x_i−) (or w(x_i+)).
/// Returned as a node profile.
GridProfile pi_map(const HamiltonianModel& model, double T, const GridProfile& w, Trace trace = Trace::Left,
                   FlowOptions opts = {});

/// Node value of a Hamilton–Jacobi profile at any x, extended linearly with
/// the boundary slopes outside the window.
double extend_linearly(const GridProfile& W, double x);

struct GraphOptions {
    FlowOptions flow{1e-3, 1e-6};
    std::size_t momentum_points = 2001;
    /// Rows are taken every `row_stride` nodes of U*.
    std::size_t row_stride = 1;
    /// Pairs within rel_tol·(1 + |U*(x_o)|) of U*(x_o) count as maximisers.
    double rel_tol = 1e-4;
    /// Half-width of the x_T search range; 0 means T·C_{H,W}.
    double reach = 0.0;
};

struct GraphPair {
    double x_o;
    double x_T;
    double p_o;
    double action;
};

struct GraphRow {
    double x_o;
    double best_value; // max over the momentum grid of W(q(T)) − action
    double best_x_T;
    double best_p_o;
    std::size_t pairs = 0;
    double x_T_min = 0.0;
    double x_T_max = 0.0;
};

struct GraphSample {
    std::vector<GraphPair> pairs;
    std::vector<GraphRow> rows;
    std::size_t empty_rows = 0;
    std::size_t monotonicity_violations = 0;
    double max_monotonicity_violation = 0.0;
    double max_distance = 0.0; // max |x_o − x_T|
    double distance_bound = 0.0; // T·C_{H,W}
};

/// Scans a momentum grid from every row x_o and keeps rays attaining
/// W(q(T)) − ∫L ≈ U*(x_o).
GraphSample sample_graph(const HamiltonianModel& model, double T, const GridProfile& W, const GridProfile& U_star,
                         GraphOptions opts = {});

/// Brute-force U*(x_o) = sup over rays from x_o of W(q(T)) − ∫L, evaluated on
/// the nodes of W with the momentum grid of `sample_graph`.
GridProfile ray_enumeration_u_star(const HamiltonianModel& model, double T, const GridProfile& W,
                                   GraphOptions opts = {});

/// CSV `x_o,x_T,p_o,action`.
void write_graph_csv(std::ostream& os, const GraphSample& graph);
/// CSV `x,pi`.
void write_pi_csv(std::ostream& os, const GridProfile& pi);

} // namespace hjid
