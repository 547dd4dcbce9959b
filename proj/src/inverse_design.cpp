#include "hjid/inverse_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "hjid/errors.hpp"
#include "hjid/pde_solvers.hpp"
#include "hjid/rays.hpp"

namespace hjid {

GridProfile compute_u_star(const HamiltonianModel& model, double T, const GridProfile& W, double cfl) {
    if (W.layout() != Layout::Nodes) throw InvalidGrid("compute_u_star: W must be a node profile");
    return evolve_hj_reversed(model, W, T, cfl);
}

namespace {

double default_tol_reach(const GridProfile& W) { return 20.0 * W.dx() * W.lipschitz() + 1e-3; }

Reachability check_reach(const HamiltonianModel& model, double T, const GridProfile& W, const GridProfile& U_star,
                         const InverseDesignOptions& opts) {
    const double tol = opts.tol_reach > 0.0 ? opts.tol_reach : default_tol_reach(W);
    const auto forward = evolve_hj(model, U_star, T, opts.cfl).final_profile();
    const double residual = sup_distance(forward, W);
    return {residual <= tol, residual, tol};
}

std::vector<Interval> merge_feet(const GridProfile& pi, const GridProfile& W, double gap_cells) {
    std::vector<double> feet(pi.values().begin(), pi.values().end());
    std::sort(feet.begin(), feet.end());
    const double gap = gap_cells * W.dx();
    const double lo = W.x_min();
    const double hi = W.x_max();
    std::vector<Interval> out;
    for (double f : feet) {
        if (f < lo - gap || f > hi + gap) continue;
        const double c = std::clamp(f, lo, hi);
        if (!out.empty() && c - out.back().b <= gap) {
            out.back().b = std::max(out.back().b, c);
        } else {
            out.push_back({c, c});
        }
    }
    return out;
}

bool in_range(const std::vector<Interval>& range, double x) {
    return std::any_of(range.begin(), range.end(), [x](const Interval& iv) { return x >= iv.a && x <= iv.b; });
}

} // namespace

std::vector<Interval> complement(const std::vector<Interval>& intervals, double a, double b) {
    std::vector<Interval> out;
    double cursor = a;
    for (const auto& iv : intervals) {
        if (iv.a > cursor) out.push_back({cursor, std::min(iv.a, b)});
        cursor = std::max(cursor, iv.b);
        if (cursor >= b) break;
    }
    if (cursor < b) out.push_back({cursor, b});
    return out;
}

InverseDesignAnalyzer::InverseDesignAnalyzer(HamiltonianModel model, double T, GridProfile W,
                                             InverseDesignOptions opts)
    : model_(std::move(model)), T_(T), W_(std::move(W)), opts_(opts),
      u_star_(compute_u_star(model_, T_, W_, opts_.cfl)) {
    reach_ = check_reach(model_, T_, W_, u_star_, opts_);
}

const std::vector<Interval>& InverseDesignAnalyzer::pi_range() {
    if (!pi_range_) {
        const auto pi = pi_map(model_, T_, derivative(W_), Trace::Left, opts_.flow);
        pi_range_ = merge_feet(pi, W_, opts_.gap_cells);
    }
    return *pi_range_;
}

double InverseDesignAnalyzer::lipschitz_bound() {
    if (!lipschitz_bound_) {
        const auto C = ray_speed_bound(model_, W_);
        if (!C.found) {
            lipschitz_bound_ = std::numeric_limits<double>::quiet_NaN();
        } else {
            const auto xs = structural_x_samples(model_);
            double sup_lx = 0.0;
            constexpr int kSpeeds = 33;
            for (std::size_t i = 0; i < xs.size(); i += 8) {
                for (int k = 0; k < kSpeeds; ++k) {
                    const double v = C.value * (2.0 * k / (kSpeeds - 1) - 1.0);
                    const double p = legendre_momentum(model_, xs[i], v);
                    sup_lx = std::max(sup_lx, std::abs(model_.dx(xs[i], p)));
                }
            }
            lipschitz_bound_ = T_ * sup_lx + W_.lipschitz();
        }
    }
    return *lipschitz_bound_;
}

MembershipVerdict InverseDesignAnalyzer::membership(const GridProfile& U0) {
    if (!reach_.reachable) {
        throw NotReachable("membership: W is not reachable (residual " + std::to_string(reach_.residual) +
                           " > " + std::to_string(reach_.tolerance) + ")");
    }
    if (!U0.same_grid(u_star_)) throw InvalidGrid("membership: U0 must share the grid of W");
    const double tol = opts_.tol_membership > 0.0
                           ? opts_.tol_membership
                           : 10.0 * W_.dx() * (1.0 + std::max(u_star_.lipschitz(), W_.lipschitz()));
    const auto& range = pi_range();
    MembershipVerdict v{};
    v.tolerance = tol;
    for (std::size_t i = 0; i < U0.size(); ++i) {
        const double diff = U0[i] - u_star_[i];
        v.max_violation_i = std::max(v.max_violation_i, -diff);
        if (in_range(range, U0.position(i))) v.max_violation_ii = std::max(v.max_violation_ii, std::abs(diff));
    }
    v.cond_i_ok = v.max_violation_i <= tol;
    v.cond_ii_ok = v.max_violation_ii <= tol;
    v.forward_residual = sup_distance(evolve_hj(model_, U0, T_, opts_.cfl).final_profile(), W_);
    v.forward_ok = v.forward_residual <= reach_.tolerance;
    v.member = v.cond_i_ok && v.cond_ii_ok && v.forward_ok;
    return v;
}

MembershipVerdict InverseDesignAnalyzer::cl_membership(const GridProfile& u0) {
    return membership(primitive(u0, u_star_[0]));
}

InverseDesignReport InverseDesignAnalyzer::report(const std::optional<GridProfile>& U0) {
    InverseDesignReport r{u_star_, u_star_.lipschitz(), lipschitz_bound(), reach_, {}, std::nullopt};
    if (reach_.reachable) {
        r.pi_range = pi_range();
        if (U0) r.membership = membership(*U0);
    }
    return r;
}

Reachability is_reachable(const HamiltonianModel& model, double T, const GridProfile& W,
                          InverseDesignOptions opts) {
    return check_reach(model, T, W, compute_u_star(model, T, W, opts.cfl), opts);
}

std::vector<Interval> pi_closure(const HamiltonianModel& model, double T, const GridProfile& W,
                                 InverseDesignOptions opts) {
    if (W.layout() != Layout::Nodes) throw InvalidGrid("pi_closure: W must be a node profile");
    const auto pi = pi_map(model, T, derivative(W), Trace::Left, opts.flow);
    return merge_feet(pi, W, opts.gap_cells);
}

MembershipVerdict membership(const HamiltonianModel& model, double T, const GridProfile& W, const GridProfile& U0,
                             InverseDesignOptions opts) {
    return InverseDesignAnalyzer(model, T, W, opts).membership(U0);
}

MembershipVerdict cl_membership(const HamiltonianModel& model, double T, const GridProfile& w,
                                const GridProfile& u0, InverseDesignOptions opts) {
    return InverseDesignAnalyzer(model, T, primitive(w, 0.0), opts).cl_membership(u0);
}

std::string report_json(const InverseDesignReport& report) {
    using nlohmann::ordered_json;
    auto num = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
    ordered_json j;
    j["reachable"] = report.reach.reachable;
    j["residual"] = report.reach.residual;
    j["tolerance"] = report.reach.tolerance;
    j["u_star_lipschitz"] = num(report.u_star_lipschitz);
    j["lipschitz_bound"] = num(report.lipschitz_bound);
    auto intervals = ordered_json::array();
    for (const auto& iv : report.pi_range) intervals.push_back({iv.a, iv.b});
    j["pi_intervals"] = intervals;
    if (report.membership) {
        const auto& m = *report.membership;
        j["membership"] = {{"cond_i_ok", m.cond_i_ok},
                           {"cond_ii_ok", m.cond_ii_ok},
                           {"max_violation_i", m.max_violation_i},
                           {"max_violation_ii", m.max_violation_ii},
                           {"forward_residual", m.forward_residual},
                           {"forward_ok", m.forward_ok},
                           {"tolerance", m.tolerance},
                           {"member", m.member}};
    } else {
        j["membership"] = nullptr;
    }
    return j.dump(2);
}

} // namespace hjid
