#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hjid/grid_profile.hpp"
#include "hjid/hamiltonian_flow.hpp"
#include "hjid/hamiltonian_model.hpp"

namespace hjid {

struct Interval {
    double a;
    double b;
};

struct InverseDesignOptions {
    double cfl = 0.45;
    /// Sup-norm tolerance of the forward check; ≤ 0 means 20·dx·Lip(W) + 1e−3.
    double tol_reach = 0.0;
    /// Pointwise tolerance of the membership conditions; ≤ 0 means 10·dx·(1 + Lip).
    double tol_membership = 0.0;
    /// π samples closer than gap_cells·dx are merged into one interval.
    double gap_cells = 2.0;
    FlowOptions flow{1e-3, 1e-6};
};

struct Reachability {
    bool reachable;
    double residual;  // ‖S_T U₀* − W‖∞
    double tolerance;
};

struct MembershipVerdict {
    bool cond_i_ok;          // U0 ≥ U₀* − tol
    bool cond_ii_ok;         // |U0 − U₀*| ≤ tol on the π range
    double max_violation_i;  // max (U₀* − U0)₊
    double max_violation_ii; // max |U0 − U₀*| over the π range
    double forward_residual; // ‖S_T U0 − W‖∞
    bool forward_ok;
    double tolerance;
    bool member; // both conditions and the forward check
};

struct InverseDesignReport {
    GridProfile U_star;
    double u_star_lipschitz;
    /// T·sup|∂ₓL| + ‖W'‖ over speeds |v| ≤ C_{H,W}; NaN if C_{H,W} was not found.
    double lipschitz_bound;
    Reachability reach;
    std::vector<Interval> pi_range;
    std::optional<MembershipVerdict> membership;
};

/// Computes U₀* once and answers reachability, π-range and membership
/// queries against it.
class InverseDesignAnalyzer {
public:
    InverseDesignAnalyzer(HamiltonianModel model, double T, GridProfile W, InverseDesignOptions opts = {});

    const GridProfile& u_star() const noexcept { return u_star_; }
    const Reachability& reachability() const noexcept { return reach_; }
    const std::vector<Interval>& pi_range();
    double lipschitz_bound();

    /// Throws NotReachable if W is not reachable.
    MembershipVerdict membership(const GridProfile& U0);
    /// Lifts cell data with primitives: W anchored at 0, U0 at U₀*(x_min).
    MembershipVerdict cl_membership(const GridProfile& u0);

    InverseDesignReport report(const std::optional<GridProfile>& U0 = std::nullopt);

    double tol_reach() const noexcept { return reach_.tolerance; }

private:
    HamiltonianModel model_;
    double T_;
    GridProfile W_;
    InverseDesignOptions opts_;
    GridProfile u_star_;
    Reachability reach_{};
    std::optional<std::vector<Interval>> pi_range_;
    std::optional<double> lipschitz_bound_;
};

GridProfile compute_u_star(const HamiltonianModel& model, double T, const GridProfile& W, double cfl = 0.45);
Reachability is_reachable(const HamiltonianModel& model, double T, const GridProfile& W,
                          InverseDesignOptions opts = {});
/// Closure of π_{W'} on the window, as merged intervals.
std::vector<Interval> pi_closure(const HamiltonianModel& model, double T, const GridProfile& W,
                                 InverseDesignOptions opts = {});
/// The parts of [a, b] not covered by `intervals` (sorted, disjoint).
std::vector<Interval> complement(const std::vector<Interval>& intervals, double a, double b);
MembershipVerdict membership(const HamiltonianModel& model, double T, const GridProfile& W, const GridProfile& U0,
                             InverseDesignOptions opts = {});
MembershipVerdict cl_membership(const HamiltonianModel& model, double T, const GridProfile& w,
                                const GridProfile& u0, InverseDesignOptions opts = {});

/// {reachable, residual, tolerance, u_star_lipschitz, lipschitz_bound, pi_intervals, membership}.
std::string report_json(const InverseDesignReport& report);

} // namespace hjid
