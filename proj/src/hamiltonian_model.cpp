#include "hjid/hamiltonian_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hjid/errors.hpp"

namespace hjid {

namespace {

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

struct Bump {
    double b, d1, d2;
};

// β(y/X) = (1 − s²)⁴ with derivatives in y.
Bump bump(double y, double radius) {
    const double s = y / radius;
    if (std::abs(s) >= 1.0) return {0.0, 0.0, 0.0};
    const double w = 1.0 - s * s;
    const double w2 = w * w;
    return {w2 * w2, -8.0 * s * w2 * w / radius, (-8.0 * w2 * w + 48.0 * s * s * w2) / (radius * radius)};
}

} // namespace

// ---------------------------------------------------------------------------

Potential::Potential(std::vector<double> coefficients, double radius)
    : coeffs_(std::move(coefficients)), radius_(radius) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    if (!(radius_ > 0.0)) throw InvalidModel("potential radius X must be positive");
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw InvalidModel("potential coefficients must be finite");
    }
    const auto d = differentiate(coeffs_);
    const double slope_scale = 1.0 + std::abs(horner(coeffs_, radius_)) + std::abs(horner(coeffs_, -radius_));
    if (std::abs(horner(d, radius_)) > 1e-9 * slope_scale || std::abs(horner(d, -radius_)) > 1e-9 * slope_scale) {
        throw InvalidModel("potential must have g'(±X) = 0 so that it can be frozen outside [-X, X]");
    }
}

Potential Potential::quartic_well() {
    // 1 − (1 − x²)⁴ = 4x² − 6x⁴ + 4x⁶ − x⁸
    return Potential({0.0, 0.0, 4.0, 0.0, -6.0, 0.0, 4.0, 0.0, -1.0}, 1.0);
}

double Potential::value(double x) const {
    return horner(coeffs_, std::clamp(x, -radius_, radius_));
}

double Potential::d1(double x) const {
    if (std::abs(x) >= radius_) return 0.0;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs_[k];
    return acc;
}

double Potential::d2(double x) const {
    if (std::abs(x) >= radius_) return 0.0;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 2;) {
        acc = acc * x + static_cast<double>(k * (k - 1)) * coeffs_[k];
    }
    return acc;
}

// ---------------------------------------------------------------------------

HamiltonianModel HamiltonianModel::quadratic_potential(Potential g) {
    return HamiltonianModel(QuadraticData{std::move(g)});
}

HamiltonianModel HamiltonianModel::homogeneous(std::vector<double> f, double radius) {
    while (f.size() > 1 && f.back() == 0.0) f.pop_back();
    const std::size_t degree = f.size() - 1;
    if (degree < 2 || degree % 2 != 0 || !(f.back() > 0.0)) {
        throw InvalidModel("homogeneous flux must be a polynomial of even degree >= 2 with positive leading coefficient");
    }
    if (!(radius > 0.0)) throw InvalidModel("radius X must be positive");
    HomogeneousData data{f, differentiate(f), {}, radius};
    data.d2f = differentiate(data.df);
    for (int i = -400; i <= 400; ++i) {
        const double p = 0.05 * i;
        if (!(horner(data.d2f, p) > 0.0)) {
            throw InvalidModel("homogeneous flux is not strictly convex at p = " + std::to_string(p));
        }
    }
    return HamiltonianModel(std::move(data));
}

HamiltonianModel HamiltonianModel::burgers() { return homogeneous({0.0, 0.0, 0.5}); }

HamiltonianModel HamiltonianModel::transformed_traffic(TrafficParams params) {
    if (!(params.radius > 0.0)) throw InvalidModel("traffic radius X must be positive");
    // Positivity of V and R over the bump range: β ∈ [0, 1].
    if (!(params.v0 > 0.0 && params.v0 + params.dv > 0.0 && params.r0 > 0.0 && params.r0 + params.dr > 0.0)) {
        throw InvalidModel("traffic model requires V > 0 and R > 0 everywhere");
    }
    return HamiltonianModel(TrafficData{params});
}

ModelKind HamiltonianModel::kind() const noexcept {
    switch (data_.index()) {
    case 0: return ModelKind::QuadraticPotential;
    case 1: return ModelKind::HomogeneousConvex;
    default: return ModelKind::TransformedTraffic;
    }
}

double HamiltonianModel::radius() const noexcept {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, QuadraticData>) return d.g.radius();
            else if constexpr (std::is_same_v<T, HomogeneousData>) return d.radius;
            else return d.params.radius;
        },
        data_);
}

const Potential* HamiltonianModel::potential() const noexcept {
    if (const auto* q = std::get_if<QuadraticData>(&data_)) return &q->g;
    return nullptr;
}

HamiltonianValue HamiltonianModel::eval(double x, double p) const {
    const double pe = reflect_momentum_ ? -p : p;
    HamiltonianValue out = std::visit(
        [x, pe](const auto& d) -> HamiltonianValue {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, QuadraticData>) {
                return {0.5 * pe * pe + d.g.value(x), d.g.d1(x), pe};
            } else if constexpr (std::is_same_v<T, HomogeneousData>) {
                return {horner(d.f, pe), 0.0, horner(d.df, pe)};
            } else {
                const auto& P = d.params;
                const double y = -x;
                const Bump b = bump(y, P.radius);
                const double V = P.v0 + P.dv * b.b;
                const double R = P.r0 + P.dr * b.b;
                const double Vy = P.dv * b.d1;
                const double Ry = P.dr * b.d1;
                const double A = pe * pe / R - pe;
                const double Ay = -pe * pe * Ry / (R * R);
                return {V * A, -(Vy * A + V * Ay), V * (2.0 * pe / R - 1.0)};
            }
        },
        data_);
    if (reflect_momentum_) out.dHdp = -out.dHdp;
    return out;
}

HamiltonianHessian HamiltonianModel::hessian(double x, double p) const {
    const double pe = reflect_momentum_ ? -p : p;
    HamiltonianHessian out = std::visit(
        [x, pe](const auto& d) -> HamiltonianHessian {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, QuadraticData>) {
                return {d.g.d2(x), 0.0, 1.0};
            } else if constexpr (std::is_same_v<T, HomogeneousData>) {
                return {0.0, 0.0, horner(d.d2f, pe)};
            } else {
                const auto& P = d.params;
                const double y = -x;
                const Bump b = bump(y, P.radius);
                const double V = P.v0 + P.dv * b.b;
                const double R = P.r0 + P.dr * b.b;
                const double Vy = P.dv * b.d1;
                const double Ry = P.dr * b.d1;
                const double Vyy = P.dv * b.d2;
                const double Ryy = P.dr * b.d2;
                const double A = pe * pe / R - pe;
                const double Ay = -pe * pe * Ry / (R * R);
                const double Ayy = -pe * pe * (Ryy / (R * R) - 2.0 * Ry * Ry / (R * R * R));
                const double xx = Vyy * A + 2.0 * Vy * Ay + V * Ayy;
                const double xp = -(Vy * (2.0 * pe / R - 1.0) - 2.0 * V * pe * Ry / (R * R));
                return {xx, xp, 2.0 * V / R};
            }
        },
        data_);
    if (reflect_momentum_) out.xp = -out.xp;
    return out;
}

HamiltonianModel HamiltonianModel::reversed() const {
    HamiltonianModel copy = *this;
    copy.reflect_momentum_ = !reflect_momentum_;
    return copy;
}

HamiltonianModel HamiltonianModel::with_momentum_cap(double cap) const {
    HamiltonianModel copy = *this;
    copy.momentum_cap_ = cap;
    return copy;
}

std::string HamiltonianModel::describe() const {
    std::ostringstream os;
    switch (kind()) {
    case ModelKind::QuadraticPotential: os << "quadratic_potential"; break;
    case ModelKind::HomogeneousConvex: os << "homogeneous"; break;
    case ModelKind::TransformedTraffic: os << "transformed_traffic"; break;
    }
    os << "(X=" << radius() << (reflect_momentum_ ? ", reversed" : "") << ")";
    return os.str();
}

GridProfile to_traffic_frame(const GridProfile& convexified) {
    auto v = convexified.values();
    std::vector<double> flipped(v.rbegin(), v.rend());
    return GridProfile(-convexified.x_max(), -convexified.x_min(), convexified.n(), convexified.layout(),
                       std::move(flipped));
}

// ---------------------------------------------------------------------------

std::vector<double> structural_x_samples(const HamiltonianModel& model) {
    const double X = model.radius();
    std::vector<double> xs;
    xs.reserve(kStructuralSamples + 2);
    for (int i = 0; i < kStructuralSamples; ++i) {
        xs.push_back(-X + 2.0 * X * i / (kStructuralSamples - 1));
    }
    xs.push_back(X + 1.0);
    xs.push_back(-X - 1.0);
    return xs;
}

double legendre_momentum(const HamiltonianModel& model, double x, double v, RootOptions opts) {
    if (model.kind() == ModelKind::QuadraticPotential) return v;
    auto residual = [&](double p) { return model.dp(x, p) - v; };
    const double cap = model.momentum_cap();
    const auto [lo, hi] = residual(0.0) < 0.0 ? expand_upward(residual, 0.0, 1.0, cap)
                                              : expand_downward(residual, 0.0, 1.0, cap);
    return safeguarded_newton(
        [&](double p) {
            return std::pair{model.dp(x, p) - v, model.hessian(x, p).pp};
        },
        lo, hi, opts);
}

double legendre(const HamiltonianModel& model, double x, double v, RootOptions opts) {
    if (model.kind() == ModelKind::QuadraticPotential) {
        return 0.5 * v * v - model.potential()->value(x);
    }
    const double p = legendre_momentum(model, x, v, opts);
    return p * v - model.value(x, p);
}

double critical_momentum(const HamiltonianModel& model, double x, RootOptions opts) {
    return legendre_momentum(model, x, 0.0, opts);
}

StructuralBounds structural_bounds(const HamiltonianModel& model) {
    StructuralBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), 0.0};
    for (double x : structural_x_samples(model)) {
        const double u = critical_momentum(model, x);
        b.u_lower = std::min(b.u_lower, u);
        b.u_upper = std::max(b.u_upper, u);
        const double h = model.value(x, u);
        if (h > b.K) {
            b.K = h;
            b.K_argmax = x;
        }
    }
    return b;
}

LevelMomenta level_momenta(const HamiltonianModel& model, double x, double c) {
    return level_momenta(model, structural_bounds(model), x, c);
}

LevelMomenta level_momenta(const HamiltonianModel& model, const StructuralBounds& bounds, double x, double c) {
    if (!(c > bounds.K)) {
        throw LevelBelowCritical("level c = " + std::to_string(c) + " must exceed K = " + std::to_string(bounds.K));
    }
    const double u = critical_momentum(model, x);
    const double cap = model.momentum_cap();
    const double step = 1.0 + std::abs(u);
    auto above = [&](double p) { return model.value(x, p) - c; };
    const auto [a_lo, a_hi] = expand_upward(above, u, step, cap);
    const double M = safeguarded_newton(
        [&](double p) {
            const auto e = model.eval(x, p);
            return std::pair{e.H - c, e.dHdp};
        },
        a_lo, a_hi);
    // On p < ǔ the level residual decreases, so solve c − H = 0 instead.
    auto below = [&](double p) { return c - model.value(x, p); };
    const auto [b_lo, b_hi] = expand_downward(below, u, step, cap);
    const double m = safeguarded_newton(
        [&](double p) {
            const auto e = model.eval(x, p);
            return std::pair{c - e.H, -e.dHdp};
        },
        b_lo, b_hi);
    return {m, M};
}

SpeedBounds speed_bounds(const HamiltonianModel& model, double c) {
    return speed_bounds(model, structural_bounds(model), c);
}

SpeedBounds speed_bounds(const HamiltonianModel& model, const StructuralBounds& bounds, double c) {
    SpeedBounds s{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (double x : structural_x_samples(model)) {
        const auto [m, M] = level_momenta(model, bounds, x, c);
        s.v = std::max(s.v, model.dp(x, m));
        s.V = std::min(s.V, model.dp(x, M));
    }
    return s;
}

double coercivity_lower_bound(const HamiltonianModel& model, double r) {
    double phi = std::numeric_limits<double>::infinity();
    for (double x : structural_x_samples(model)) {
        phi = std::min({phi, model.value(x, r), model.value(x, -r)});
    }
    return phi;
}

RaySpeedBound ray_speed_bound(const HamiltonianModel& model, double w_lipschitz, double cap) {
    const double lw = std::abs(w_lipschitz);
    double sup_h = 0.0;
    double sup_l = 0.0;
    for (double q : structural_x_samples(model)) {
        // Both suprema are over intervals of convex functions: the extremes sit
        // at the endpoints or at the (clipped) minimiser.
        const double pc = std::clamp(critical_momentum(model, q), -lw, lw);
        for (double p : {-lw, lw, pc}) sup_h = std::max(sup_h, std::abs(model.value(q, p)));
        const double vc = std::clamp(model.dp(q, 0.0), -1.0, 1.0);
        for (double v : {-1.0, 1.0, vc}) sup_l = std::max(sup_l, std::abs(legendre(model, q, v)));
    }
    const double rhs = sup_h + sup_l;
    auto holds = [&](double r) { return coercivity_lower_bound(model, r) / (1.0 + r) > rhs; };

    RaySpeedBound out{cap, rhs, lw, false};
    double lo = 0.0;
    double hi = 1e-3;
    while (true) {
        if (hi > cap) return out;
        if (!holds(hi)) {
            lo = hi;
            hi *= 2.0;
            continue;
        }
        // Accept the crossing only if the inequality persists on further doublings.
        double broken = -1.0;
        for (double r = 2.0 * hi; r <= std::min(cap, 64.0 * hi); r *= 2.0) {
            if (!holds(r)) {
                broken = r;
                break;
            }
        }
        if (broken < 0.0) break;
        lo = broken;
        hi = 2.0 * broken;
    }
    for (int it = 0; it < 100 && hi - lo > 1e-9 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? hi : lo) = mid;
    }
    out.value = hi;
    out.found = true;
    return out;
}

RaySpeedBound ray_speed_bound(const HamiltonianModel& model, const GridProfile& W, double cap) {
    return ray_speed_bound(model, W.lipschitz(), cap);
}

} // namespace hjid
