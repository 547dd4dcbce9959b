#include "hjid/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "hjid/errors.hpp"

namespace hjid {

GaussRule gauss_legendre(std::size_t n) {
    if (n == 0) throw Error("gauss_legendre: need at least one node");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // i-th largest root.
        const double k = static_cast<double>(i) + 1.0;
        double x = std::cos(std::numbers::pi * (k - 0.25) / (nd + 0.5)) *
                   (1.0 - (nd - 1.0) / (8.0 * nd * nd * nd));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                const double jd = static_cast<double>(j);
                const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace hjid
