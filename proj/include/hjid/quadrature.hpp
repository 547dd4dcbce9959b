#pragma once

#include <cstddef>
#include <vector>

namespace hjid {

struct GaussRule {
    std::vector<double> nodes;   // on [−1, 1], increasing
    std::vector<double> weights;
};

/// n-point Gauss–Legendre rule (Newton on P_n from Tricomi's initial guesses).
GaussRule gauss_legendre(std::size_t n);

/// ∫_a^b f with an n-point Gauss–Legendre rule.
template <class F>
double integrate_gauss(const GaussRule& rule, F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * s;
}

} // namespace hjid
