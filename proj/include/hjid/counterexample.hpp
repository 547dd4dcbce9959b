#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hjid/grid_profile.hpp"
#include "hjid/hamiltonian_flow.hpp"
#include "hjid/hamiltonian_model.hpp"

namespace hjid::counterexample {

/// g(x) = 1 − (1 − x²)⁴ on [−1, 1], 1 outside.
double quartic_g(double x);
double quartic_g_prime(double x);
/// −2 for x < 0, 2 for x > 0 (and 0 at the origin).
double datum_u0(double x);

/// H(x, p) = p²/2 + g(x).
HamiltonianModel quartic_model();
/// The datum on cells of [x_min, x_max].
GridProfile datum_profile(double x_min, double x_max, std::size_t n);

/// π/√2: the small-amplitude limit of the period.
double period_limit();
/// π/(2√2): the time at which the stationary shock at x = 0 appears.
double shock_onset_time();

struct PeriodValue {
    double value;
    double error; // |Q_n − Q_{n/2}|
};

/// Smallest period of the orbit through (0, p0), 0 < p0 < √2. Throws OutOfRange otherwise.
PeriodValue period(double p0);
/// Twice the first return time of q to 0 along the orbit from (0, p0).
double period_by_flow(double p0, double dt = 1e-4);

struct PeriodTable {
    std::vector<double> p_values;
    std::vector<double> periods;
    std::vector<double> quadrature_error;
};

PeriodTable period_table(const std::vector<double>& p_values);
/// CSV `p0,period,err`.
void write_period_csv(std::ostream& os, const PeriodTable& table);

/// The p in (0, √2) with 𝒯(p) = target; requires target > π/√2.
double inverse_period(double target);

// ---------------------------------------------------------------------------
// Sturm certificate

using Rational = boost::multiprecision::cpp_rational;
/// Ascending coefficients.
using RationalPoly = std::vector<Rational>;

struct SturmChain {
    std::vector<RationalPoly> polynomials;
};

/// P(x) = x⁸ − 32/7 x⁶ + 59/7 x⁴ − 8x² − 6/7.
RationalPoly chicone_polynomial();
Rational evaluate(const RationalPoly& p, const Rational& x);
SturmChain sturm_chain(const RationalPoly& p);
/// P_{k−1} = Q_k·P_k − P_{k+1} holds exactly for every link.
bool verify_remainder_relation(const SturmChain& chain);
/// Signs (−1, 0, +1) of every chain member at x.
std::vector<int> chain_signs(const SturmChain& chain, const Rational& x);
int sign_changes(const SturmChain& chain, const Rational& x);

struct ChiconeCertificate {
    SturmChain chain;
    std::vector<int> signs_at_minus_one;
    std::vector<int> signs_at_plus_one;
    int changes_at_minus_one;
    int changes_at_plus_one;
    int roots;
    Rational value_at_zero;
    bool holds; // no root in [−1, 1] and P(0) < 0
};

ChiconeCertificate chicone_certificate();
/// The sign table and verdict as printed by the CLI.
void write_sturm_report(std::ostream& os, const ChiconeCertificate& cert);
std::string format_polynomial(const RationalPoly& p);

// ---------------------------------------------------------------------------
// Exact solution

/// q♯(t) = ℱ_q(t, 0, 2).
double q_sharp(double t, FlowOptions opts = {1e-3, 1e-7});

struct DeltaResult {
    double q_o;
    double p_o;
    double lambda; // λ ≤ 0 ↦ (0, 2 + λ), λ > 0 ↦ (λ, 2)
    double residual;
};

struct DeltaOptions {
    FlowOptions flow{1e-3, 1e-7};
    double tolerance = 1e-10;
};

/// Δ(t, ·) for a fixed t: the starting point in D of the ray that reaches x
/// at time t while staying positive on (0, t). The positivity constraint cuts
/// the λ bracket at p_min with 𝒯(p_min) = 2t once 2t ≥ π/√2; p_min is
/// computed once per solver.
class DeltaSolver {
public:
    explicit DeltaSolver(double t, DeltaOptions opts = {});

    double time() const noexcept { return t_; }
    /// Smallest admissible p_o on {0} × (0, 2]; 0 before the shock onset.
    double p_min() const noexcept { return p_min_; }

    DeltaResult delta(double x) const;
    /// u(t, x) = ℱ_p(t, Δ(t, x)) for x > 0, extended oddly; x ≠ 0.
    double exact_solution(double x) const;
    /// u(t, 0+) = ℱ_p(t, 0, p_min); u(t, 0−) is its negative.
    double trace_at_zero() const;

private:
    double X(double lambda) const;

    HamiltonianModel model_;
    double t_;
    DeltaOptions opts_;
    double p_min_ = 0.0;
};

DeltaResult delta(double t, double x, DeltaOptions opts = {});
double exact_solution(double t, double x, DeltaOptions opts = {});

enum class Sampling {
    Centres,        // u(t, x) at each cell centre
    RightEdgeTrace, // u(t, x−) at each cell's right edge, so left traces are exact
};

/// The exact solution on the cells of [x_min, x_max].
GridProfile exact_profile(double t, double x_min, double x_max, std::size_t n, DeltaOptions opts = {},
                          Sampling sampling = Sampling::Centres);

/// Jump u(t, 0−) − u(t, 0+) = 2p* with 𝒯(p*) = 2t. Throws NoShockYet for t ≤ π/(2√2).
double shock_trace(double t);

/// CSV `family,p0,t,q,p` of orbits from (0, p0) over [0, t_max].
void write_phase_portrait(std::ostream& os, const std::vector<double>& p0_values, double t_max,
                          std::size_t samples_per_orbit = 400);

} // namespace hjid::counterexample
