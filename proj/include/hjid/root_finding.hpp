#pragma once

#include <cmath>
#include <utility>

#include "hjid/errors.hpp"

namespace hjid {

struct RootOptions {
    double abs_tol = 1e-12;
    int max_iter = 200;
};

/// Root of `f` inside [lo, hi], where `f` returns {value, derivative} and
/// changes sign across the bracket. Newton steps are taken while they stay in
/// the current bracket; otherwise the step falls back to bisection.
template <class F>
double safeguarded_newton(F&& f, double lo, double hi, RootOptions opts = {}) {
    auto [f_lo, d_lo] = f(lo);
    auto [f_hi, d_hi] = f(hi);
    (void)d_lo;
    (void)d_hi;
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw RootNotBracketed("safeguarded_newton: no sign change on [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const bool increasing = f_hi > 0.0;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < opts.max_iter; ++it) {
        auto [fx, dfx] = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == increasing) {
            hi = x;
        } else {
            lo = x;
        }
        if (hi - lo <= opts.abs_tol) return 0.5 * (lo + hi);
        double next = x - fx / dfx;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        } else if (std::abs(next - x) <= 0.25 * opts.abs_tol) {
            return next;
        }
        x = next;
    }
    return x;
}

/// Plain bisection for functions without a usable derivative. `f` must change
/// sign on [lo, hi].
template <class F>
double bisect(F&& f, double lo, double hi, RootOptions opts = {}) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw RootNotBracketed("bisect: no sign change on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
    }
    const bool increasing = f_hi > 0.0;
    for (int it = 0; it < opts.max_iter && hi - lo > opts.abs_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == increasing) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Grows [start, start + step·2^k] until the increasing function `f` becomes
/// nonnegative at the right end. Throws once the right end passes `cap`.
template <class F>
std::pair<double, double> expand_upward(F&& f, double start, double step, double cap) {
    double lo = start;
    double hi = start + step;
    while (f(hi) < 0.0) {
        lo = hi;
        step *= 2.0;
        hi = start + step;
        if (std::abs(hi) > cap) {
            throw RootNotBracketed("bracket expansion exceeded momentum cap " + std::to_string(cap));
        }
    }
    return {lo, hi};
}

/// Mirror of expand_upward: grows downward until the increasing `f` becomes
/// nonpositive at the left end.
template <class F>
std::pair<double, double> expand_downward(F&& f, double start, double step, double cap) {
    double hi = start;
    double lo = start - step;
    while (f(lo) > 0.0) {
        hi = lo;
        step *= 2.0;
        lo = start - step;
        if (std::abs(lo) > cap) {
            throw RootNotBracketed("bracket expansion exceeded momentum cap " + std::to_string(cap));
        }
    }
    return {lo, hi};
}

} // namespace hjid
