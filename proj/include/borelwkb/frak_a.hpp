#pragma once

#include <cmath>
#include <string>

#include "borelwkb/errors.hpp"

namespace borelwkb {

/// Positive root a of e^a = 1 + 2a; the large-n limit of n * frak_a(n).
inline double limit_constant() {
    // Bisection on [1, 2] then Newton; f(1) < 0 < f(2).
    auto f = [](double x) { return std::expm1(x) - 2.0 * x; };
    double lo = 1.0;
    double hi = 2.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        const double step = f(x) / (std::exp(x) - 2.0);
        x -= step;
        if (std::abs(step) <= 1e-17 * x) break;
    }
    return x;
}

struct FrakAEntry {
    unsigned n = 0;
    double value = 0.0;
    /// |(1+value)^n - (1 + 2 n value)| / (1 + 2 n value).
    double residual = 0.0;
};

namespace detail {

// (1+x)^n - 1 - 2nx, evaluated without cancellation in (1+x)^n - 1.
inline double frak_a_defect(unsigned n, double x) {
    return std::expm1(static_cast<double>(n) * std::log1p(x)) - 2.0 * n * x;
}

inline double frak_a_defect_slope(unsigned n, double x) {
    return n * std::exp((n - 1.0) * std::log1p(x)) - 2.0 * n;
}

}  // namespace detail

/// Unique positive root of (1+x)^n = 1 + 2 n x, bracketed by
/// a/n <= x <= 2/(n-1): 20 bisection steps, then up to 30 Newton steps kept
/// inside the bracket.
inline FrakAEntry frak_a(unsigned n) {
    if (n < 2) throw DomainError("frak_a: n must be >= 2, got " + std::to_string(n));

    double lo = limit_constant() / n;
    double hi = 2.0 / (n - 1.0);
    double x;
    // n = 2 has its root exactly at the upper end; the log1p form misses zero by an ulp.
    auto at_root = [n](double v) { return std::abs(detail::frak_a_defect(n, v)) <= 1e-15 * (1.0 + 2.0 * n * v); };
    if (at_root(hi)) {
        x = hi;
    } else if (at_root(lo)) {
        x = lo;
    } else {
        for (int i = 0; i < 20; ++i) {
            const double mid = 0.5 * (lo + hi);
            (detail::frak_a_defect(n, mid) < 0.0 ? lo : hi) = mid;
        }
        x = 0.5 * (lo + hi);
        for (int i = 0; i < 30; ++i) {
            const double f = detail::frak_a_defect(n, x);
            if (f == 0.0) break;
            double next = x - f / detail::frak_a_defect_slope(n, x);
            if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
            (detail::frak_a_defect(n, next) < 0.0 ? lo : hi) = next;
            const bool settled = std::abs(next - x) <= 4e-16 * x;
            x = next;
            if (settled) break;
        }
    }
    const double rhs = 1.0 + 2.0 * n * x;
    return FrakAEntry{n, x, std::abs(detail::frak_a_defect(n, x)) / rhs};
}

}  // namespace borelwkb
