#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "borelwkb/combinatorics.hpp"
#include "borelwkb/errors.hpp"
#include "borelwkb/frak_a.hpp"
#include "borelwkb/geometry.hpp"
#include "borelwkb/laurent.hpp"
#include "borelwkb/pade.hpp"
#include "borelwkb/quadrature.hpp"
#include "borelwkb/wkb.hpp"

namespace borelwkb {

/// Taylor coefficients b_m = A_{m+1}(xi)/m! of the Borel transform at xi.
struct BorelSample {
    Complex xi{};
    std::vector<Complex> b;
    /// Estimated convergence radius in the Borel plane; infinity if unknown.
    double radius_hint = std::numeric_limits<double>::infinity();
};

struct SummationResult {
    Complex value{};
    double error_estimate = 0.0;
    std::string method;
    std::vector<std::string> diagnostics;
    bool converged = true;
};

namespace detail {

inline void require_right_half_plane(Complex u, const char* who) {
    if (!(u.real() > 0.0)) throw DomainError(std::string(who) + ": need Re(u) > 0");
}

inline std::string fmt_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.6g,%.6g)", z.real(), z.imag());
    return buf;
}

}  // namespace detail

inline BorelSample borel_taylor(const CoefficientTable& table, Complex xi) {
    if (xi == Complex{}) throw ZeroPointError("borel_taylor: xi = 0");
    if (table.M < 2) throw DomainError("borel_taylor: need M >= 2");
    BorelSample s;
    s.xi = xi;
    double fact = 1.0;
    for (unsigned m = 0; m < table.M; ++m) {
        if (m > 0) fact *= m;
        s.b.push_back(evaluate(table.A[m + 1], xi) / fact);
    }
    if (table.M >= 6) {
        const GevreyReport g = gevrey_diagnostics(table, xi, 1.0);
        if (!g.degenerate && std::isfinite(g.radius_estimate) && g.radius_estimate > 0.0) {
            s.radius_hint = g.radius_estimate;
        }
    }
    return s;
}

/// Partial sum of the asymptotic series through m = N-1; the first omitted
/// term serves as the error estimate.
inline SummationResult truncated_asymptotic(const CoefficientTable& table, Complex u, Complex xi, unsigned N) {
    detail::require_right_half_plane(u, "truncated_asymptotic");
    if (xi == Complex{}) throw ZeroPointError("truncated_asymptotic: xi = 0");
    if (N < 1 || N > table.M) {
        throw DomainError("truncated_asymptotic: N = " + std::to_string(N) + " outside 1.." + std::to_string(table.M));
    }
    SummationResult r;
    r.method = "truncate";
    Complex upow = 1.0;
    for (unsigned m = 1; m < N; ++m) {
        upow *= u;
        r.value += evaluate(table.A[m], xi) / upow;
    }
    r.error_estimate = std::abs(evaluate(table.A[N], xi) / (upow * u));
    return r;
}

/// N in 1..M minimising the first-omitted-term estimate.
inline unsigned optimal_truncation(const CoefficientTable& table, Complex u, Complex xi) {
    unsigned best = 1;
    double best_err = INFINITY;
    Complex upow = 1.0;
    for (unsigned N = 1; N <= table.M; ++N) {
        upow *= u;
        const double e = std::abs(evaluate(table.A[N], xi) / upow);
        if (e < best_err) {
            best_err = e;
            best = N;
        }
    }
    return best;
}

struct QuadConfig {
    /// Panel length along the path; 0 selects 1/Re(u).
    double panel_length = 0.0;
    /// Path truncation: stop once e^{-Re(u) T} and the last panel fall below this.
    double tail_tol = 1e-16;
    /// Shift the path off the real axis when an approximant pole comes close.
    bool nudge = true;
    /// Height of the shifted path; 0 selects half the Borel radius hint.
    double nudge_height = 0.0;
    /// Poles closer than this to the path trigger the nudge (or an error).
    double pole_tol = 1e-6;
    /// Relative singular-value cutoff of the robust Pade construction.
    double pade_tol = 1e-14;
};

namespace detail {

inline double distance_to_path(Complex z, double height, double T) {
    // Path: 0 -> i*height -> T + i*height (height may be 0 or negative).
    const double x = z.real();
    const double y = z.imag();
    double best = INFINITY;
    if (height != 0.0) {
        const double lo = std::min(0.0, height);
        const double hi = std::max(0.0, height);
        const double yy = std::clamp(y, lo, hi);
        best = std::hypot(x, y - yy);
    }
    const double xx = std::clamp(x, 0.0, T);
    return std::min(best, std::hypot(x - xx, y - height));
}

template <class F>
quad::Estimate laplace_along(F&& f, Complex u, double height, double panel, double tail_tol, double& T_used) {
    auto g = [&](Complex t) { return std::exp(-u * t) * f(t); };
    quad::Estimate out;
    if (height != 0.0) {
        const auto seg = quad::adaptive_segment(g, 0.0, Complex(0.0, height), 1e-17, 10);
        out.value += seg.value;
        out.error += seg.error;
        out.panels += seg.panels;
    }
    const double T0 = std::log(1.0 / tail_tol) / u.real();
    double x = 0.0;
    int quiet = 0;
    for (int k = 0; k < 100000; ++k) {
        const Complex a(x, height);
        const Complex b(x + panel, height);
        const double scale = std::max(std::abs(out.value), std::abs(quad::gauss_segment(g, a, b)));
        const auto seg = quad::adaptive_segment(g, a, b, 1e-16 * scale, 8);
        out.value += seg.value;
        out.error += seg.error;
        out.panels += seg.panels;
        x += panel;
        if (x >= T0) {
            quiet = std::abs(seg.value) <= tail_tol * 0.1 * std::abs(out.value) ? quiet + 1 : 0;
            if (quiet >= 2 || out.value == Complex{}) break;
        }
    }
    T_used = x;
    // Tail beyond T: the integrand decays at least like its last value times
    // e^{-Re(u)(t-T)} for a rational F of bounded degree.
    out.error += std::abs(g(Complex(x, height))) / u.real();
    return out;
}

}  // namespace detail

/// Laplace transform of the diagonal-type Pade continuation of the Borel
/// series, integrated on [0, inf) (or a parallel line when a pole of the
/// approximant sits on the axis).
inline SummationResult borel_pade_sum(const BorelSample& sample, Complex u, unsigned pade_order,
                                      const QuadConfig& quad = {}) {
    detail::require_right_half_plane(u, "borel_pade_sum");
    if (2 * static_cast<std::size_t>(pade_order) + 1 > sample.b.size()) {
        throw DomainError("borel_pade_sum: order " + std::to_string(pade_order) + " needs " +
                          std::to_string(2 * pade_order + 1) + " coefficients, have " +
                          std::to_string(sample.b.size()));
    }
    SummationResult res;
    res.method = "borel_pade";

    // Rescale t by the radius hint so the data is O(1) over the fitted range.
    const double s = std::isfinite(sample.radius_hint) && sample.radius_hint > 0.0 ? sample.radius_hint : 1.0;
    std::vector<Complex> c(sample.b.size());
    double sp = 1.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
        c[m] = sample.b[m] * sp;
        sp *= s;
    }
    const std::span<const Complex> cs(c);
    const RationalApprox R = robust_pade(cs.first(2 * pade_order + 1), pade_order, pade_order, quad.pade_tol);
    std::optional<RationalApprox> Rprev;
    if (pade_order >= 1) {
        Rprev = robust_pade(cs.first(2 * pade_order - 1), pade_order - 1, pade_order - 1, quad.pade_tol);
    }

    const double panel = quad.panel_length > 0.0 ? quad.panel_length : 1.0 / u.real();
    const double T_est = std::log(1.0 / quad.tail_tol) / u.real();

    std::vector<Complex> poles;
    for (Complex p : R.poles()) poles.push_back(p * s);
    double height = 0.0;
    double nearest = INFINITY;
    for (Complex p : poles) nearest = std::min(nearest, detail::distance_to_path(p, 0.0, T_est));
    if (nearest < quad.pole_tol) {
        if (!quad.nudge) {
            throw PoleOnAxis("borel_pade_sum: approximant pole within " + std::to_string(nearest) +
                             " of the integration path");
        }
        const double h = quad.nudge_height > 0.0 ? quad.nudge_height
                                                 : (std::isfinite(sample.radius_hint) ? 0.5 * sample.radius_hint : 0.5);
        double up = INFINITY;
        double down = INFINITY;
        for (Complex p : poles) {
            up = std::min(up, detail::distance_to_path(p, h, T_est));
            down = std::min(down, detail::distance_to_path(p, -h, T_est));
        }
        height = up >= down ? h : -h;
        res.diagnostics.push_back("pole within " + std::to_string(nearest) + " of the real axis; path moved to Im t = " +
                                  std::to_string(height));
    }
    for (Complex p : poles) {
        if (detail::distance_to_path(p, height, T_est) < 0.1 * s) {
            res.diagnostics.push_back("approximant pole near path at t = " + detail::fmt_complex(p));
        }
    }

    auto F = [&](Complex t) { return R(t / s); };
    double T_used = 0.0;
    const quad::Estimate main = detail::laplace_along(F, u, height, panel, quad.tail_tol, T_used);
    res.value = main.value;
    res.error_estimate = main.error;
    if (Rprev) {
        auto Fp = [&](Complex t) { return (*Rprev)(t / s); };
        double T2 = 0.0;
        const quad::Estimate prev = detail::laplace_along(Fp, u, height, panel, quad.tail_tol, T2);
        res.error_estimate += std::abs(prev.value - main.value);
    }
    res.diagnostics.push_back("pade [" + std::to_string(R.numerator_degree()) + "/" +
                              std::to_string(R.denominator_degree()) + "], T = " + std::to_string(T_used));
    return res;
}

/// Sufficient convergence threshold pi/(2 frak_a(n) d) for the factorial series.
inline double omega_threshold(unsigned n, double d) { return std::numbers::pi / (2.0 * frak_a(n).value * d); }

/// 1.1 times the threshold, with d taken as the clearance of xi from the
/// boundary rays of the sector domain on sheet j.
inline double default_omega(unsigned n, unsigned j, Complex xi) {
    const double dhat = airy_boundary_clearance(n, j, 0.0, sheet_point(n, j, xi));
    if (!(dhat > 0.0)) throw DomainError("default_omega: xi lies outside the sector domain; pass omega explicitly");
    return 1.1 * omega_threshold(n, dhat);
}

/// B_m(omega, xi) = sum_r omega^{m-r} |s(m,r)| A_{r+1}(xi), m = 0..M.
inline std::vector<Complex> factorial_coeffs(const CoefficientTable& table, double omega, Complex xi, unsigned M) {
    if (M + 1 > table.M) {
        throw DomainError("factorial_coeffs: M = " + std::to_string(M) + " needs table order " +
                          std::to_string(M + 1) + ", have " + std::to_string(table.M));
    }
    std::vector<Complex> a;
    for (unsigned r = 0; r <= M; ++r) a.push_back(evaluate(table.A[r + 1], xi));
    const auto S = stirling_first_table(M);
    std::vector<Complex> B;
    for (unsigned m = 0; m <= M; ++m) {
        Complex acc{};
        for (unsigned r = 0; r <= m; ++r) {
            if (S[m][r] == 0) continue;
            acc += std::pow(omega, static_cast<int>(m - r)) * static_cast<double>(S[m][r]) * a[r];
        }
        B.push_back(acc);
    }
    return B;
}

/// sum_m B_m / (u (u+omega) ... (u+m omega)), stopped when an increment drops
/// to 1e-14 of the partial sum. `threshold`, when positive, is the sufficient
/// convergence bound on omega; falling short of it adds a warning only.
inline SummationResult factorial_sum(const std::vector<Complex>& B, Complex u, double omega, double threshold = 0.0) {
    detail::require_right_half_plane(u, "factorial_sum");
    if (!(omega > 0.0)) throw DomainError("factorial_sum: omega must be positive");
    SummationResult r;
    r.method = "factorial";
    if (threshold > 0.0 && omega <= threshold) {
        r.diagnostics.push_back("omega = " + std::to_string(omega) + " is not above the sufficient threshold " +
                                std::to_string(threshold));
    }
    Complex den = u;
    std::vector<double> inc;
    bool reached = false;
    for (std::size_t m = 0; m < B.size(); ++m) {
        if (m > 0) den *= u + static_cast<double>(m) * omega;
        const Complex term = B[m] / den;
        r.value += term;
        inc.push_back(std::abs(term));
        if (m > 0 && std::abs(term) <= 1e-14 * std::abs(r.value)) {
            reached = true;
            break;
        }
    }
    r.error_estimate = inc.empty() ? 0.0 : inc.back();
    if (!reached && inc.size() >= 2) {
        // Stopped decreasing: the last increment is well above the smallest one
        // seen. Factor 2 tolerates mild oscillation.
        const double smallest = *std::min_element(inc.begin(), inc.end());
        if (inc.back() > 2.0 * smallest) {
            r.converged = false;
            r.diagnostics.push_back("increments stopped decreasing");
        } else {
            r.diagnostics.push_back("relative tolerance 1e-14 not reached within " + std::to_string(inc.size()) +
                                    " terms");
        }
    }
    return r;
}

/// W_j = exp(e^{2 pi i j/n} u xi + X_j(xi)) (1 + eta). `log_value` is the
/// logarithm of W (principal branch of log(1+eta)); `overflow` is set when
/// |Re(e^{2 pi i j/n} u xi)| > 700, where `value` may be inf or 0.
struct AssembledW {
    Complex value{};
    Complex log_value{};
    bool overflow = false;
};

inline AssembledW assemble_W(const CoefficientTable& table, Complex u, Complex xi, Complex eta) {
    if (xi == Complex{}) throw ZeroPointError("assemble_W: xi = 0");
    const Complex lead = detail::root_of_unity(table.n, table.j) * u * xi;
    const Complex expo = lead + evaluate(table.X, xi);
    AssembledW w;
    w.log_value = expo + std::log(1.0 + eta);
    w.overflow = std::abs(lead.real()) > 700.0;
    w.value = std::exp(expo) * (1.0 + eta);
    return w;
}

}  // namespace borelwkb
