#include "hjid/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hjid/csv.hpp"
#include "hjid/errors.hpp"
#include "hjid/quadrature.hpp"
#include "hjid/root_finding.hpp"

namespace hjid::counterexample {

double quartic_g(double x) {
    if (std::abs(x) >= 1.0) return 1.0;
    const double a = 1.0 - x * x;
    return 1.0 - a * a * a * a;
}

double quartic_g_prime(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double a = 1.0 - x * x;
    return 8.0 * x * a * a * a;
}

double datum_u0(double x) {
    if (x < 0.0) return -2.0;
    if (x > 0.0) return 2.0;
    return 0.0;
}

HamiltonianModel quartic_model() { return HamiltonianModel::quadratic_potential(Potential::quartic_well()); }

GridProfile datum_profile(double x_min, double x_max, std::size_t n) {
    return GridProfile::sample(x_min, x_max, n, Layout::Cells, datum_u0);
}

double period_limit() { return std::numbers::pi / std::numbers::sqrt2; }
double shock_onset_time() { return 0.5 * period_limit(); }

namespace {

const GaussRule& rule(std::size_t n) {
    static const GaussRule fine = gauss_legendre(2048);
    static const GaussRule coarse = gauss_legendre(1024);
    return n == 2048 ? fine : coarse;
}

// 𝒯 = 4√2 ∫₀¹ ds / √((2 − s²)(A + B)(A² + B²)) with A = 1 − r², B = 1 − (1 − s²)²r²,
// obtained from x = r(1 − s²) and a⁴ − b⁴ = (a − b)(a + b)(a² + b²).
double period_quadrature(double p0, std::size_t nodes) {
    const double E = 0.5 * p0 * p0;
    const double quarter = std::log1p(-E) / 4.0;
    const double A = std::exp(quarter);
    const double r2 = -std::expm1(quarter);
    auto f = [&](double s) {
        const double c = 1.0 - s * s;
        const double B = 1.0 - c * c * r2;
        return 1.0 / std::sqrt((2.0 - s * s) * (A + B) * (A * A + B * B));
    };
    return 4.0 * std::numbers::sqrt2 * integrate_gauss(rule(nodes), f, 0.0, 1.0);
}

void check_amplitude(double p0) {
    if (!(p0 > 0.0 && p0 < std::numbers::sqrt2)) {
        throw OutOfRange("period: p0 = " + std::to_string(p0) + " outside (0, sqrt(2))");
    }
}

} // namespace

PeriodValue period(double p0) {
    check_amplitude(p0);
    const double fine = period_quadrature(p0, 2048);
    return {fine, std::abs(fine - period_quadrature(p0, 1024))};
}

double period_by_flow(double p0, double dt) {
    check_amplitude(p0);
    const auto model = quartic_model();
    auto field = [&](double q, double p) {
        const auto e = model.eval(q, p);
        return std::array<double, 2>{e.dHdp, -e.dHdx};
    };
    double q = 0.0;
    double p = p0;
    double t = 0.0;
    const double t_cap = 1e4;
    while (t < t_cap) {
        const auto k1 = field(q, p);
        const auto k2 = field(q + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1]);
        const auto k3 = field(q + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1]);
        const auto k4 = field(q + dt * k3[0], p + dt * k3[1]);
        const double qn = q + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        const double pn = p + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        if (t > 0.0 && q > 0.0 && qn <= 0.0) {
            // Cubic Hermite through (q, q̇ = p) and (qn, q̇ = pn) on the step.
            auto hermite = [&](double s) {
                const double s2 = s * s;
                const double s3 = s2 * s;
                return (2 * s3 - 3 * s2 + 1) * q + (s3 - 2 * s2 + s) * dt * p + (-2 * s3 + 3 * s2) * qn +
                       (s3 - s2) * dt * pn;
            };
            const double s = bisect([&](double s) { return -hermite(s); }, 0.0, 1.0, {1e-15, 200});
            return 2.0 * (t + s * dt);
        }
        q = qn;
        p = pn;
        t += dt;
    }
    throw OutOfRange("period_by_flow: no return to 0 before t = " + std::to_string(t_cap));
}

PeriodTable period_table(const std::vector<double>& p_values) {
    PeriodTable table;
    for (double p0 : p_values) {
        const auto v = period(p0);
        table.p_values.push_back(p0);
        table.periods.push_back(v.value);
        table.quadrature_error.push_back(v.error);
    }
    return table;
}

void write_period_csv(std::ostream& os, const PeriodTable& table) {
    CsvWriter csv(os, {"p0", "period", "err"});
    for (std::size_t i = 0; i < table.p_values.size(); ++i) {
        csv.row({table.p_values[i], table.periods[i], table.quadrature_error[i]});
    }
}

double inverse_period(double target) {
    if (!(target > period_limit())) {
        throw OutOfRange("inverse_period: target " + std::to_string(target) + " not above pi/sqrt(2)");
    }
    const double hi = std::numbers::sqrt2 * (1.0 - 1e-12);
    if (period_quadrature(hi, 2048) < target) {
        throw OutOfRange("inverse_period: target " + std::to_string(target) + " beyond tabulated range");
    }
    return bisect([&](double p) { return period_quadrature(p, 2048) - target; }, 1e-12, hi, {1e-15, 200});
}

// ---------------------------------------------------------------------------

namespace {

void trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly differentiate(const RationalPoly& p) {
    RationalPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

RationalPoly subtract(RationalPoly a, const RationalPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
}

RationalPoly multiply(const RationalPoly& a, const RationalPoly& b) {
    if (a.empty() || b.empty()) return {};
    RationalPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

std::pair<RationalPoly, RationalPoly> divide(RationalPoly a, const RationalPoly& b) {
    if (b.empty()) throw Error("polynomial division by zero");
    trim(a);
    RationalPoly q;
    if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1);
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

} // namespace

RationalPoly chicone_polynomial() {
    return {Rational(-6, 7), 0, -8, 0, Rational(59, 7), 0, Rational(-32, 7), 0, 1};
}

Rational evaluate(const RationalPoly& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

SturmChain sturm_chain(const RationalPoly& p) {
    SturmChain chain;
    RationalPoly first = p;
    trim(first);
    chain.polynomials.push_back(first);
    RationalPoly second = differentiate(first);
    if (second.empty()) return chain;
    chain.polynomials.push_back(second);
    while (true) {
        const auto& a = chain.polynomials[chain.polynomials.size() - 2];
        const auto& b = chain.polynomials.back();
        auto rem = divide(a, b).second;
        if (rem.empty()) break;
        for (auto& c : rem) c = -c;
        chain.polynomials.push_back(std::move(rem));
    }
    return chain;
}

bool verify_remainder_relation(const SturmChain& chain) {
    const auto& ps = chain.polynomials;
    if (ps.size() >= 2 && ps[1] != differentiate(ps[0])) return false;
    for (std::size_t k = 1; k < ps.size(); ++k) {
        const auto q = divide(ps[k - 1], ps[k]).first;
        const RationalPoly next = k + 1 < ps.size() ? ps[k + 1] : RationalPoly{};
        if (subtract(multiply(q, ps[k]), next) != ps[k - 1]) return false;
    }
    return true;
}

std::vector<int> chain_signs(const SturmChain& chain, const Rational& x) {
    std::vector<int> s;
    for (const auto& p : chain.polynomials) s.push_back(sign_of(evaluate(p, x)));
    return s;
}

int sign_changes(const SturmChain& chain, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (int s : chain_signs(chain, x)) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

ChiconeCertificate chicone_certificate() {
    ChiconeCertificate cert;
    const auto P = chicone_polynomial();
    cert.chain = sturm_chain(P);
    cert.signs_at_minus_one = chain_signs(cert.chain, Rational(-1));
    cert.signs_at_plus_one = chain_signs(cert.chain, Rational(1));
    cert.changes_at_minus_one = sign_changes(cert.chain, Rational(-1));
    cert.changes_at_plus_one = sign_changes(cert.chain, Rational(1));
    // Roots in (−1, 1]; P(−1) ≠ 0 is checked so the closed interval is covered.
    const bool endpoint_root = evaluate(P, Rational(-1)) == 0;
    cert.roots = cert.changes_at_minus_one - cert.changes_at_plus_one + (endpoint_root ? 1 : 0);
    cert.value_at_zero = evaluate(P, Rational(0));
    cert.holds = verify_remainder_relation(cert.chain) && cert.roots == 0 && cert.value_at_zero < 0;
    return cert;
}

std::string format_polynomial(const RationalPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = p.size(); k-- > 0;) {
        const Rational& c = p[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        const bool unit = mag == 1 && k > 0;
        if (!unit) os << mag.str();
        if (k > 0) {
            if (!unit) os << ' ';
            os << 'x';
            if (k > 1) os << '^' << k;
        }
        first = false;
    }
    if (first) os << '0';
    return os.str();
}

void write_sturm_report(std::ostream& os, const ChiconeCertificate& cert) {
    auto sign_char = [](int s) { return s > 0 ? '+' : (s < 0 ? '-' : '0'); };
    os << "P(x) = " << format_polynomial(cert.chain.polynomials.front()) << '\n';
    os << "k  sign(-1)  sign(+1)  P_k\n";
    for (std::size_t k = 0; k < cert.chain.polynomials.size(); ++k) {
        os << k << "  " << sign_char(cert.signs_at_minus_one[k]) << "         " << sign_char(cert.signs_at_plus_one[k])
           << "         " << format_polynomial(cert.chain.polynomials[k]) << '\n';
    }
    os << "sign changes at -1: " << cert.changes_at_minus_one << '\n';
    os << "sign changes at +1: " << cert.changes_at_plus_one << '\n';
    os << "roots in [-1,1]: " << cert.roots << '\n';
    os << "P(0) = " << cert.value_at_zero.str() << '\n';
    os << "certificate: " << (cert.holds ? "holds" : "fails") << '\n';
}

// ---------------------------------------------------------------------------

double q_sharp(double t, FlowOptions opts) { return flow_endpoint(quartic_model(), t, 0.0, 2.0, opts).q; }

DeltaSolver::DeltaSolver(double t, DeltaOptions opts) : model_(quartic_model()), t_(t), opts_(opts) {
    if (!(t > 0.0)) throw OutOfRange("delta: t must be positive");
    // Orbits from (0, p) with 𝒯(p) < 2t come back through 0 before time t.
    if (2.0 * t > period_limit() * (1.0 + 1e-13)) p_min_ = inverse_period(2.0 * t);
}

double DeltaSolver::X(double lambda) const {
    if (lambda <= 0.0) return flow_endpoint(model_, t_, 0.0, 2.0 + lambda, opts_.flow).q;
    return flow_endpoint(model_, t_, lambda, 2.0, opts_.flow).q;
}

DeltaResult DeltaSolver::delta(double x) const {
    if (!(x > 0.0)) throw OutOfRange("delta: x must be positive");
    auto f = [&](double lambda) {
        const bool on_axis = lambda <= 0.0;
        const auto tan = on_axis ? flow_with_tangent(model_, t_, 0.0, 2.0 + lambda, 0.0, 1.0, opts_.flow)
                                 : flow_with_tangent(model_, t_, lambda, 2.0, 1.0, 0.0, opts_.flow);
        return std::pair<double, double>{tan.state.q - x, tan.dq};
    };
    const double lo = p_min_ - 2.0;
    const double hi = x + 1.0;
    double lambda = 0.0;
    if (f(lo).first >= 0.0) {
        lambda = lo;
    } else {
        lambda = safeguarded_newton(f, lo, hi, {opts_.tolerance * 1e-3, 200});
    }
    DeltaResult r;
    r.lambda = lambda;
    r.q_o = lambda <= 0.0 ? 0.0 : lambda;
    r.p_o = lambda <= 0.0 ? 2.0 + lambda : 2.0;
    r.residual = std::abs(X(lambda) - x);
    return r;
}

double DeltaSolver::exact_solution(double x) const {
    if (x == 0.0) throw OutOfRange("exact_solution: undefined at x = 0");
    if (x < 0.0) return -exact_solution(-x);
    const auto d = delta(x);
    return flow_endpoint(model_, t_, d.q_o, d.p_o, opts_.flow).p;
}

double DeltaSolver::trace_at_zero() const { return flow_endpoint(model_, t_, 0.0, p_min_, opts_.flow).p; }

DeltaResult delta(double t, double x, DeltaOptions opts) { return DeltaSolver(t, opts).delta(x); }

double exact_solution(double t, double x, DeltaOptions opts) { return DeltaSolver(t, opts).exact_solution(x); }

GridProfile exact_profile(double t, double x_min, double x_max, std::size_t n, DeltaOptions opts,
                          Sampling sampling) {
    const DeltaSolver solver(t, opts);
    std::vector<double> values(n);
    const double dx = (x_max - x_min) / static_cast<double>(n);
    const double offset = sampling == Sampling::Centres ? 0.5 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_min + (static_cast<double>(i) + offset) * dx;
        if (std::abs(x) <= 1e-12 * dx) {
            // At the shock: a centre takes the mean of the traces, an edge the left trace.
            values[i] = sampling == Sampling::Centres ? 0.0 : -solver.trace_at_zero();
        } else {
            values[i] = solver.exact_solution(x);
        }
    }
    return GridProfile(x_min, x_max, n, Layout::Cells, std::move(values));
}

double shock_trace(double t) {
    if (!(t > shock_onset_time())) {
        throw NoShockYet("shock_trace: no shock before t = pi/(2 sqrt(2)); got t = " + std::to_string(t));
    }
    return 2.0 * inverse_period(2.0 * t);
}

void write_phase_portrait(std::ostream& os, const std::vector<double>& p0_values, double t_max,
                          std::size_t samples_per_orbit) {
    const auto model = quartic_model();
    CsvWriter csv(os, {"family", "p0", "t", "q", "p"});
    for (std::size_t f = 0; f < p0_values.size(); ++f) {
        const auto traj = flow(model, t_max, 0.0, p0_values[f], {1e-3, 1e-6});
        const std::size_t stride = std::max<std::size_t>(1, traj.samples.size() / std::max<std::size_t>(1, samples_per_orbit));
        for (std::size_t k = 0; k < traj.samples.size(); k += stride) {
            const auto& s = traj.samples[k];
            csv.row({static_cast<double>(f), p0_values[f], s.t, s.q, s.p});
        }
    }
}

} // namespace hjid::counterexample
