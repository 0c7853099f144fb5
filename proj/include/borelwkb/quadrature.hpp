#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

namespace borelwkb::quad {

using Complex = std::complex<double>;

/// Gauss-Legendre rule order used on every panel.
inline constexpr unsigned kNodes = 32;

/// Integral of f along the straight segment a -> b with one 32-point
/// Gauss-Legendre panel.
template <class F>
Complex gauss_segment(F&& f, Complex a, Complex b) {
    using Rule = boost::math::quadrature::gauss<double, kNodes>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    Complex acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            acc += w[i] * f(mid);
        } else {
            acc += w[i] * (f(mid + x[i] * half) + f(mid - x[i] * half));
        }
    }
    return acc * half;
}

struct Estimate {
    Complex value{};
    double error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

template <class F>
void adapt(F& f, Complex a, Complex b, Complex whole, double abs_tol, unsigned depth, Estimate& out) {
    const Complex m = 0.5 * (a + b);
    const Complex left = gauss_segment(f, a, m);
    const Complex right = gauss_segment(f, m, b);
    const double diff = std::abs(left + right - whole);
    // Panels below roundoff level of their own value cannot improve further.
    if (diff <= abs_tol || diff <= 1e-15 * std::abs(left + right) || depth == 0) {
        out.value += left + right;
        out.error += diff;
        out.panels += 2;
        return;
    }
    adapt(f, a, m, left, 0.5 * abs_tol, depth - 1, out);
    adapt(f, m, b, right, 0.5 * abs_tol, depth - 1, out);
}

}  // namespace detail

/// Adaptive bisection on a -> b: a panel is accepted when it agrees with the
/// sum over its two halves to within its share of `abs_tol`.
template <class F>
Estimate adaptive_segment(F&& f, Complex a, Complex b, double abs_tol, unsigned max_depth = 16) {
    Estimate out;
    detail::adapt(f, a, b, gauss_segment(f, a, b), abs_tol, max_depth, out);
    return out;
}

/// Integral of f along origin + s * direction, s in [0, inf), |direction| = 1.
/// Panels double in length until several consecutive panels contribute less
/// than `rel_tol` of the running total.
template <class F>
Estimate ray_integral(F&& f, Complex origin, Complex direction, double rel_tol, double first_panel = 1.0) {
    Estimate out;
    double s = 0.0;
    double len = first_panel;
    int quiet = 0;
    for (int iter = 0; iter < 200 && quiet < 4; ++iter) {
        const Complex a = origin + s * direction;
        const Complex b = origin + (s + len) * direction;
        const double scale = std::max(std::abs(out.value), std::abs(gauss_segment(f, a, b)));
        const Estimate piece = adaptive_segment(f, a, b, rel_tol * scale);
        out.value += piece.value;
        out.error += piece.error;
        out.panels += piece.panels;
        quiet = std::abs(piece.value) <= rel_tol * std::abs(out.value) ? quiet + 1 : 0;
        s += len;
        len *= 2.0;
    }
    return out;
}

}  // namespace borelwkb::quad
