#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "borelwkb/combinatorics.hpp"
#include "borelwkb/errors.hpp"
#include "borelwkb/geometry.hpp"
#include "borelwkb/potential.hpp"
#include "borelwkb/power_series.hpp"
#include "borelwkb/quadrature.hpp"
#include "borelwkb/summation.hpp"
#include "borelwkb/wkb.hpp"

namespace borelwkb {

// ---------------------------------------------------------------------------
// Saddle-point coefficients

struct PerronTable {
    unsigned n = 0;
    std::vector<double> a;
};

/// a_m = [(2n+2)^m m!]^{-1} d^{2m}/ds^{2m} h(s)^{m+1/2} at s = 1, with
/// h(s) = (n(n+1)/2)(s-1)^2 / (s^{n+1} - (n+1)s + n). Series arithmetic runs
/// in 50-digit binary floating point on w = s - 1, to `depth` terms.
inline PerronTable perron_coeff(unsigned n, unsigned M, std::size_t depth = 0) {
    using Real = boost::multiprecision::cpp_bin_float_50;
    if (n < 2) throw DomainError("perron_coeff: n must be >= 2");
    if (depth == 0) depth = 2 * static_cast<std::size_t>(M) + 2;
    if (2 * static_cast<std::size_t>(M) + 1 > depth) {
        throw SeriesDepthError("perron_coeff: order 2M = " + std::to_string(2 * M) + " needs depth " +
                               std::to_string(2 * M + 1) + ", have " + std::to_string(depth));
    }
    // s^{n+1} - (n+1)s + n = (s-1)^2 sum_{k=0}^{n-1} C(n+1, k+2) w^k exactly;
    // normalising by C(n+1, 2) gives 1/h with constant term 1.
    const Real c2 = Real(binomial(n + 1, 2));
    std::vector<Real> q(n);
    for (unsigned k = 0; k < n; ++k) q[k] = Real(binomial(n + 1, k + 2)) / c2;
    const std::vector<Real> log_h = series::scale(series::log(q, depth), Real(-1));

    PerronTable t;
    t.n = n;
    for (unsigned m = 0; m <= M; ++m) {
        const Real power = Real(m) + Real(1) / 2;
        const std::vector<Real> hp = series::exp(series::scale(log_h, power), 2 * m + 1);
        Real norm = Real(factorial(2 * m)) / Real(factorial(m));
        for (unsigned i = 0; i < m; ++i) norm /= Real(2 * n + 2);
        t.a.push_back(static_cast<double>(hp[2 * m] * norm));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Contour integrals for y(x) = sqrt(n/2pi) int t^k exp(-t^{n+1}/(n+1) + x t) dt,
// taken from infinity in direction 2pi/(n+1) to +infinity.

struct OracleConfig {
    /// Half-width excluded at each end of the validity sector of y0.
    double delta = 0.1;
    /// Relative accuracy requested from the path quadrature.
    double rel_tol = 1e-15;
};

namespace detail {

struct SaddleProblem {
    unsigned n;
    Complex zeta;

    [[nodiscard]] Complex g(Complex s) const {
        return std::pow(s, static_cast<int>(n + 1)) / static_cast<double>(n) -
               (n + 1.0) / n * s + 1.0;
    }
    [[nodiscard]] Complex G(Complex s) const { return zeta * g(s); }
    [[nodiscard]] Complex Gp(Complex s) const {
        return zeta * ((n + 1.0) / n) * (std::pow(s, static_cast<int>(n)) - 1.0);
    }
};

/// Valley directions of exp(-zeta s^{n+1}/n): (2 pi k - arg zeta)/(n+1).
inline double valley_angle(unsigned n, double arg_zeta, unsigned k) {
    return (2.0 * std::numbers::pi * k - arg_zeta) / (n + 1.0);
}

inline unsigned nearest_valley(unsigned n, double arg_zeta, Complex s) {
    const double a = std::arg(s);
    unsigned best = 0;
    double best_d = INFINITY;
    for (unsigned k = 0; k <= n; ++k) {
        double d = std::remainder(a - valley_angle(n, arg_zeta, k), 2.0 * std::numbers::pi);
        d = std::abs(d);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

struct Branch {
    unsigned valley = 0;
    std::vector<Complex> path;  // saddle first
};

/// Steepest-descent trace of exp(-zeta g) from a saddle in direction phi,
/// with direction field conj(G')/|G'| integrated by RK4 at unit speed.
/// Stops deep in a valley; nullopt when the path stalls at another saddle.
inline std::optional<Branch> trace_branch(const SaddleProblem& P, double arg_geom, Complex saddle, double phi) {
    const unsigned n = P.n;
    const double g0 = P.G(saddle).real();
    const double r_valley = std::pow(4.0 * (n + 1.0), 1.0 / n);
    const double gp_floor = 1e-9 * std::abs(P.zeta);
    auto v = [&](Complex s) -> std::optional<Complex> {
        const Complex d = std::conj(P.Gp(s));
        const double m = std::abs(d);
        if (m < gp_floor) return std::nullopt;
        return d / m;
    };
    Branch br;
    br.path.push_back(saddle);
    Complex s = saddle + 0.02 * std::polar(1.0, phi);
    br.path.push_back(s);
    for (int step = 0; step < 20000; ++step) {
        const double rise = P.G(s).real() - g0;
        if (rise > 46.0 && std::abs(s) > r_valley) {
            const unsigned k = nearest_valley(n, arg_geom, s);
            const double off = std::abs(std::remainder(std::arg(s) - valley_angle(n, arg_geom, k), 2.0 * std::numbers::pi));
            if (off < std::numbers::pi / (2.0 * (n + 1.0))) {
                br.valley = k;
                return br;
            }
        }
        const double h = std::min(0.25, 0.05 * std::max(1.0, std::abs(s)));
        const auto k1 = v(s);
        if (!k1) return std::nullopt;
        const auto k2 = v(s + 0.5 * h * *k1);
        if (!k2) return std::nullopt;
        const auto k3 = v(s + 0.5 * h * *k2);
        if (!k3) return std::nullopt;
        const auto k4 = v(s + h * *k3);
        if (!k4) return std::nullopt;
        s += h / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
        br.path.push_back(s);
        if (std::abs(s) > 1e6) return std::nullopt;
    }
    return std::nullopt;
}

/// Signed integral of f along a polyline.
template <class F>
quad::Estimate polyline_integral(F& f, const std::vector<Complex>& pts, double rel_tol) {
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) scale += std::abs(quad::gauss_segment(f, pts[i], pts[i + 1]));
    quad::Estimate out;
    const double tol = rel_tol * std::max(scale, 1e-300) / std::max<std::size_t>(1, pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto seg = quad::adaptive_segment(f, pts[i], pts[i + 1], tol, 20);
        out.value += seg.value;
        out.error += seg.error;
        out.panels += seg.panels;
    }
    return out;
}

/// Valley-to-valley contour from valley 1 to valley 0 assembled from the
/// steepest-descent paths of all saddles. Returns the polylines to integrate
/// (already oriented) or nullopt if the geometry is degenerate.
inline std::optional<std::vector<std::vector<Complex>>> descent_contour(unsigned n, Complex zeta, double arg_geom) {
    const SaddleProblem P{n, std::polar(std::abs(zeta), arg_geom)};
    struct Edge {
        Branch a;
        Branch b;
    };
    std::vector<Edge> edges;
    for (unsigned m = 0; m < n; ++m) {
        const Complex w = detail::root_of_unity(n, m);
        const Complex g2 = P.zeta * (n + 1.0) * std::pow(w, static_cast<int>(n - 1));
        const double phi = -std::arg(g2) / 2.0;
        auto a = trace_branch(P, arg_geom, w, phi);
        auto b = trace_branch(P, arg_geom, w, phi + std::numbers::pi);
        if (!a || !b) return std::nullopt;
        if (a->valley == b->valley) continue;
        edges.push_back({std::move(*a), std::move(*b)});
    }
    // Breadth-first search over valleys 0..n.
    std::vector<int> via(n + 1, -1);
    std::vector<bool> seen(n + 1, false);
    std::deque<unsigned> queue{1};
    seen[1] = true;
    while (!queue.empty()) {
        const unsigned x = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            unsigned other;
            if (edges[e].a.valley == x) {
                other = edges[e].b.valley;
            } else if (edges[e].b.valley == x) {
                other = edges[e].a.valley;
            } else {
                continue;
            }
            if (seen[other]) continue;
            seen[other] = true;
            via[other] = static_cast<int>(e);
            queue.push_back(other);
        }
    }
    if (!seen[0]) return std::nullopt;
    std::vector<std::vector<Complex>> pieces;
    unsigned cur = 0;
    while (cur != 1) {
        const Edge& e = edges[static_cast<std::size_t>(via[cur])];
        const Branch& to = e.a.valley == cur ? e.a : e.b;
        const Branch& from = e.a.valley == cur ? e.b : e.a;
        std::vector<Complex> poly(from.path.rbegin(), from.path.rend());
        poly.insert(poly.end(), to.path.begin() + 1, to.path.end());
        pieces.push_back(std::move(poly));
        cur = from.valley;
    }
    return pieces;
}

}  // namespace detail

/// I_k = int s^k exp(-zeta g(s)) ds from valley 1 to valley 0 of the
/// rescaled integrand, g(s) = s^{n+1}/n - (n+1)s/n + 1, with valleys fixed by
/// the explicit argument `arg_zeta`.
inline Complex saddle_integral(unsigned n, double abs_zeta, double arg_zeta, unsigned k, const OracleConfig& cfg = {}) {
    const Complex zeta = std::polar(abs_zeta, arg_zeta);
    const detail::SaddleProblem P{n, zeta};
    auto f = [&](Complex s) { return std::pow(s, static_cast<int>(k)) * std::exp(-P.G(s)); };
    for (double shift : {0.0, 1e-3, -1e-3, 1e-2, -1e-2, 5e-2, -5e-2}) {
        const auto pieces = detail::descent_contour(n, zeta, arg_zeta + shift);
        if (!pieces) continue;
        Complex total{};
        for (const auto& poly : *pieces) total += detail::polyline_integral(f, poly, cfg.rel_tol).value;
        return total;
    }
    throw DescentFailure("saddle_integral: no valley-to-valley descent contour found for arg zeta = " +
                         std::to_string(arg_zeta));
}

/// Same integral along a caller-supplied polyline (first vertex deep in
/// valley 1, last deep in valley 0).
inline Complex saddle_integral_along(unsigned n, Complex zeta, unsigned k, const std::vector<Complex>& poly,
                                     const OracleConfig& cfg = {}) {
    const detail::SaddleProblem P{n, zeta};
    auto f = [&](Complex s) { return std::pow(s, static_cast<int>(k)) * std::exp(-P.G(s)); };
    return detail::polyline_integral(f, poly, cfg.rel_tol).value;
}

namespace detail {

// Direct t-plane evaluation for small |x|: rays at angles 2 pi/(n+1) and 0.
inline Complex y_direct(unsigned n, Complex x, unsigned k, const OracleConfig& cfg) {
    const double alpha = 2.0 * std::numbers::pi / (n + 1.0);
    const Complex e = std::polar(1.0, alpha);
    auto f = [&](Complex t) {
        return std::pow(t, static_cast<int>(k)) * std::exp(-std::pow(t, static_cast<int>(n + 1)) / (n + 1.0) + x * t);
    };
    const Complex in0 = quad::ray_integral(f, 0.0, 1.0, cfg.rel_tol, 0.5).value;
    const Complex in1 = quad::ray_integral(f, 0.0, e, cfg.rel_tol, 0.5).value;
    return std::sqrt(n / (2.0 * std::numbers::pi)) * (in0 - in1);
}

}  // namespace detail

/// k-th derivative of y at x (the integral with t^k inserted).
inline Complex y_derivative_quadrature(unsigned n, Complex x, unsigned k, const OracleConfig& cfg = {}) {
    if (n < 2) throw DomainError("y_derivative_quadrature: n must be >= 2");
    if (k > n) throw DomainError("y_derivative_quadrature: k must be <= n");
    // x = c^n with the principal root c; zeta = n c^{n+1}/(n+1).
    const double arg_c = std::arg(x) / n;
    const double abs_c = std::pow(std::abs(x), 1.0 / n);
    const double abs_zeta = n / (n + 1.0) * std::pow(abs_c, n + 1.0);
    if (x == Complex{} || abs_zeta < 1.0) return detail::y_direct(n, x, k, cfg);
    const double arg_zeta = (n + 1.0) * arg_c;
    const Complex c = std::polar(abs_c, arg_c);
    const Complex zeta = std::polar(abs_zeta, arg_zeta);
    const Complex I = saddle_integral(n, abs_zeta, arg_zeta, k, cfg);
    return std::sqrt(n / (2.0 * std::numbers::pi)) * std::pow(c, static_cast<int>(k + 1)) * std::exp(zeta) * I;
}

/// y0(zeta) e^{-zeta}, where y0(zeta) = y(((n+1) zeta/n)^{n/(n+1)}) on the
/// Riemann surface of the (n+1)-th root; zeta is given in polar form.
inline Complex y0_scaled(unsigned n, SheetPoint zeta, const OracleConfig& cfg = {}) {
    if (n < 2) throw DomainError("y0_quadrature: n must be >= 2");
    if (!(zeta.modulus >= 1.0)) throw DomainError("y0_quadrature: need |zeta| >= 1");
    const double pi = std::numbers::pi;
    const double lo = -pi / n + cfg.delta;
    const double hi = (2.0 * n + 1.0) * pi / n - cfg.delta;
    if (!(zeta.arg > lo && zeta.arg < hi)) {
        throw SectorViolation("y0_quadrature: arg zeta = " + std::to_string(zeta.arg) + " outside (" +
                              std::to_string(lo) + ", " + std::to_string(hi) + ")");
    }
    const Complex c = std::polar(std::pow((n + 1.0) * zeta.modulus / n, 1.0 / (n + 1.0)), zeta.arg / (n + 1.0));
    const Complex I = saddle_integral(n, zeta.modulus, zeta.arg, 0, cfg);
    return std::sqrt(n / (2.0 * pi)) * c * I;
}

inline Complex y0_quadrature(unsigned n, SheetPoint zeta, const OracleConfig& cfg = {}) {
    return y0_scaled(n, zeta, cfg) * std::exp(zeta.value());
}

/// W0(u, xi) e^{-u xi} for W0 = u^{1/2 - 1/(n+1)} z^{(1-1/n)/2} y0(u xi),
/// z = ((n+1) xi/n)^{n/(n+1)}, on the sheet 0 < arg xi < 2 pi and with
/// -pi/2 < arg u < pi/2.
inline Complex W0_scaled(unsigned n, Complex u, SheetPoint xi, const OracleConfig& cfg = {}) {
    const double pi = std::numbers::pi;
    if (!(xi.modulus > 0.0)) throw ZeroPointError("W0_oracle: xi = 0");
    if (!(xi.arg > 0.0 && xi.arg < 2.0 * pi)) throw DomainError("W0_oracle: need 0 < arg xi < 2 pi");
    if (!(u.real() > 0.0)) throw DomainError("W0_oracle: need Re(u) > 0");
    const double arg_u = std::arg(u);
    const double abs_u = std::abs(u);
    const SheetPoint zeta{abs_u * xi.modulus, arg_u + xi.arg};
    const double p = 0.5 - 1.0 / (n + 1.0);
    const double q = 0.5 * (1.0 - 1.0 / n);
    const double z_mod = std::pow((n + 1.0) * xi.modulus / n, n / (n + 1.0));
    const double z_arg = n / (n + 1.0) * xi.arg;
    const Complex u_pow = std::polar(std::pow(abs_u, p), p * arg_u);
    const Complex z_pow = std::polar(std::pow(z_mod, q), q * z_arg);
    return u_pow * z_pow * y0_scaled(n, zeta, cfg);
}

inline Complex W0_oracle(unsigned n, Complex u, SheetPoint xi, const OracleConfig& cfg = {}) {
    return W0_scaled(n, u, xi, cfg) * std::exp(u * xi.value());
}

// ---------------------------------------------------------------------------
// Method comparison

struct MethodOptions {
    unsigned orders = 40;
    unsigned pade_order = 0;   // 0: largest order the coefficients allow
    unsigned truncation = 0;   // 0: optimal truncation
    double omega = 0.0;        // 0: default_omega
    QuadConfig quad;
};

/// eta_j(u, xi) by one of "truncate", "borel_pade", "factorial".
inline SummationResult resum(const CoefficientTable& table, Complex u, Complex xi, const std::string& method,
                             const MethodOptions& opt = {}) {
    if (method == "truncate") {
        const unsigned N = opt.truncation ? opt.truncation : optimal_truncation(table, u, xi);
        return truncated_asymptotic(table, u, xi, N);
    }
    if (method == "borel_pade" || method == "borel-pade") {
        const BorelSample s = borel_taylor(table, xi);
        const unsigned P = opt.pade_order ? opt.pade_order : static_cast<unsigned>((s.b.size() - 1) / 2);
        return borel_pade_sum(s, u, P, opt.quad);
    }
    if (method == "factorial") {
        const double omega = opt.omega > 0.0 ? opt.omega : default_omega(table.n, table.j, xi);
        const double dhat = airy_boundary_clearance(table.n, table.j, 0.0, sheet_point(table.n, table.j, xi));
        const double thr = dhat > 0.0 ? omega_threshold(table.n, dhat) : 0.0;
        const auto B = factorial_coeffs(table, omega, xi, table.M - 1);
        SummationResult r = factorial_sum(B, u, omega, thr);
        r.diagnostics.push_back("omega = " + std::to_string(omega));
        return r;
    }
    throw DomainError("unknown summation method '" + method + "'");
}

struct CompareRow {
    std::string method;
    Complex scaled{};  // W / e^{u xi}
    double rel_deviation = 0.0;
    double error_estimate = 0.0;
    double wall_time = 0.0;
    std::string error;
};

struct CompareReport {
    Complex oracle_scaled{};
    std::string oracle_error;
    std::vector<CompareRow> rows;
};

/// Resums the Airy-type coefficients (sheet 0) by each method and measures
/// the relative deviation of W/e^{u xi} from the quadrature oracle. Failures
/// are reported per row.
inline CompareReport compare(unsigned n, Complex u, SheetPoint xi, const std::vector<std::string>& methods,
                             const MethodOptions& opt = {}) {
    CompareReport rep;
    try {
        rep.oracle_scaled = W0_scaled(n, u, xi);
    } catch (const Error& e) {
        rep.oracle_error = e.what();
    }
    std::optional<CoefficientTable> table;
    std::string table_error;
    try {
        table = compute_coefficients(airy_family(n, opt.orders), 0, opt.orders);
    } catch (const Error& e) {
        table_error = e.what();
    }
    for (const auto& m : methods) {
        CompareRow row;
        row.method = m;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            if (!table) throw DomainError(table_error);
            const Complex x = xi.value();
            if (!airy_domain_contains(DomainSpec{n, 0, 1e-9, 1e-9}, xi)) {
                throw SectorViolation("xi outside the sector domain of sheet 0");
            }
            const SummationResult r = resum(*table, u, x, m, opt);
            row.scaled = std::exp(evaluate(table->X, x)) * (1.0 + r.value);
            row.error_estimate = r.error_estimate;
            row.rel_deviation = rep.oracle_error.empty() ? std::abs(row.scaled - rep.oracle_scaled) /
                                                               std::abs(rep.oracle_scaled)
                                                         : NAN;
        } catch (const Error& e) {
            row.error = e.what();
        }
        row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace borelwkb
