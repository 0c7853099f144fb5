#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "borelwkb/combinatorics.hpp"
#include "borelwkb/errors.hpp"
#include "borelwkb/frak_a.hpp"
#include "borelwkb/geometry.hpp"
#include "borelwkb/laurent.hpp"
#include "borelwkb/potential.hpp"

namespace borelwkb {

/// WKB coefficients A_{j,0..M}(xi) and the exponent correction X_j(xi) for
/// one sheet index j.
struct CoefficientTable {
    unsigned j = 0;
    unsigned n = 2;
    unsigned M = 0;
    LaurentSeries X;
    std::vector<LaurentSeries> A;
    std::string spec_hash;
    std::size_t budget = 0;
};

/// Smallest admissible truncation budget for M coefficients of an order-n
/// equation.
inline std::size_t minimum_budget(unsigned n, unsigned M) { return static_cast<std::size_t>(M) + n + 4; }

namespace detail {

/// e^{2 pi i j k / n} for k = 0..n-1, each from an exact rational multiple
/// of 2 pi; phase(j * e) is then table[(j * e) mod n].
inline std::vector<Complex> sheet_phases(unsigned n) {
    std::vector<Complex> out(n);
    for (unsigned k = 0; k < n; ++k) out[k] = root_of_unity(n, k);
    return out;
}

struct PhaseTable {
    unsigned n;
    unsigned j;
    std::vector<Complex> roots;

    PhaseTable(unsigned n_, unsigned j_) : n(n_), j(j_), roots(sheet_phases(n_)) {}

    /// e^{2 pi i j e / n} for any integer e.
    [[nodiscard]] Complex operator()(long long e) const {
        const long long r = ((static_cast<long long>(j) * e) % n + n) % n;
        return roots[static_cast<std::size_t>(r)];
    }
};

inline LaurentSeries psi_entry(const PotentialSpec& spec, unsigned k, unsigned m, std::size_t budget) {
    const LaurentSeries* s = spec.find(k, m);
    return s ? s->truncated(budget) : LaurentSeries(budget);
}

inline double binom_d(unsigned n, unsigned k) { return static_cast<double>(small_binomial(n, k)); }

inline std::vector<LaurentSeries> bell_of_exponent(const LaurentSeries& X, unsigned p_max, std::size_t budget) {
    const LaurentSeries one = LaurentSeries::constant(1.0, budget);
    if (X.is_zero()) {
        std::vector<LaurentSeries> b(p_max + 1, LaurentSeries(budget));
        b[0] = one;
        return b;
    }
    std::vector<LaurentSeries> xs;
    LaurentSeries d = X;
    for (unsigned i = 0; i < p_max; ++i) {
        d = differentiate(d);
        xs.push_back(d);
    }
    return complete_bell_sequence<LaurentSeries>(p_max, std::span<const LaurentSeries>(xs), one);
}

}  // namespace detail

/// X_j(xi) = -(1/n) * integral over P_j(xi) of sum_k e^{2 pi i j(k+1)/n} psi_{k,1}.
inline LaurentSeries compute_X(const PotentialSpec& spec, unsigned j, std::size_t budget) {
    detail::check_sheet(spec.n, j, "compute_X");
    const detail::PhaseTable phase(spec.n, j);
    LaurentSeries integrand(budget);
    for (unsigned k = 0; k + 2 <= spec.n; ++k) {
        const LaurentSeries psi = detail::psi_entry(spec, k, 1, budget);
        if (!psi.is_zero()) integrand += psi * phase(k + 1);
    }
    return ray_tail_integral(integrand) * Complex(-1.0 / spec.n);
}

inline LaurentSeries compute_X(const PotentialSpec& spec, unsigned j) {
    return compute_X(spec, j, minimum_budget(spec.n, spec.max_order));
}

/// A_{j,1..M} from the fixed-constant recurrence, all integrals taken from xi
/// to infinity along P_j(xi). Inputs are truncated at exponent `budget`.
inline CoefficientTable compute_coefficients(const PotentialSpec& spec, unsigned j, unsigned M, std::size_t budget) {
    const unsigned n = spec.n;
    detail::check_sheet(n, j, "compute_coefficients");
    if (M < 1) throw DomainError("compute_coefficients: M must be >= 1");
    if (budget < minimum_budget(n, M)) {
        throw DomainError("compute_coefficients: budget " + std::to_string(budget) + " below M + n + 4 = " +
                          std::to_string(minimum_budget(n, M)));
    }
    const detail::PhaseTable phase(n, j);

    CoefficientTable t;
    t.j = j;
    t.n = n;
    t.M = M;
    t.budget = budget;
    t.X = compute_X(spec, j, budget).truncated(budget);
    const std::vector<LaurentSeries> B = detail::bell_of_exponent(t.X, n, budget);

    // psi[k][m], m = 1..M+1.
    std::vector<std::vector<LaurentSeries>> psi(n - 1);
    for (unsigned k = 0; k + 2 <= n; ++k) {
        for (unsigned m = 0; m <= M + 1; ++m) {
            psi[k].push_back(m == 0 ? LaurentSeries(budget) : detail::psi_entry(spec, k, m, budget));
        }
    }

    // D[q][r] = d^r A_q / dxi^r for r = 0..n.
    std::vector<std::vector<LaurentSeries>> D;
    auto push_derivatives = [&](const LaurentSeries& a) {
        std::vector<LaurentSeries> row{a};
        for (unsigned r = 1; r <= n; ++r) row.push_back(differentiate(row.back()));
        D.push_back(std::move(row));
    };
    t.A.push_back(LaurentSeries::constant(1.0, budget));
    push_derivatives(t.A[0]);

    // sum_r C(p,r) B_{p-r} * w * d^r A_q, skipping vanishing factors.
    auto bell_block = [&](unsigned p, const LaurentSeries* w, unsigned q, LaurentSeries& acc, Complex coef) {
        for (unsigned r = 0; r <= p; ++r) {
            const LaurentSeries& b = B[p - r];
            const LaurentSeries& da = D[q][r];
            if (b.is_zero() || da.is_zero()) continue;
            LaurentSeries term = b * da;
            if (w) term = term * *w;
            acc += term * (coef * detail::binom_d(p, r));
        }
    };

    for (unsigned m = 1; m <= M; ++m) {
        LaurentSeries integrand(budget);
        for (unsigned p = 2; p <= std::min(n, m + 1); ++p) {
            bell_block(p, nullptr, m - p + 1, integrand, detail::binom_d(n, p) / n * phase(n - p + 1));
        }
        for (unsigned k = 0; k + 2 <= n; ++k) {
            const LaurentSeries& w = psi[k][1];
            if (w.is_zero()) continue;
            for (unsigned p = 1; p <= std::min(m, k); ++p) {
                bell_block(p, &w, m - p, integrand, -detail::binom_d(k, p) / n * phase(static_cast<long long>(k) - p + 1));
            }
        }
        for (unsigned k = 0; k + 2 <= n; ++k) {
            for (unsigned q = 0; q < m; ++q) {
                const LaurentSeries& w = psi[k][m - q + 1];
                if (w.is_zero()) continue;
                for (unsigned p = 0; p <= std::min(k, q); ++p) {
                    bell_block(p, &w, q - p, integrand,
                               -detail::binom_d(k, p) / n * phase(static_cast<long long>(k) - p + 1));
                }
            }
        }
        LaurentSeries a = ray_tail_integral(integrand);
        if (a.valid_to() < M) {
            throw TruncationExhausted("compute_coefficients: A_" + std::to_string(m) + " trusted only to xi^-" +
                                      std::to_string(a.valid_to()) + ", below requested order " + std::to_string(M));
        }
        t.A.push_back(std::move(a));
        push_derivatives(t.A.back());
    }
    return t;
}

inline CoefficientTable compute_coefficients(const PotentialSpec& spec, unsigned j, unsigned M) {
    return compute_coefficients(spec, j, M, minimum_budget(spec.n, M));
}

/// A_{j,1} from its three explicit integrals (B_2, B_1 psi_{k,1} and psi_{k,2}
/// terms), independent of the general recurrence.
inline LaurentSeries first_coefficient(const PotentialSpec& spec, unsigned j, std::size_t budget) {
    const unsigned n = spec.n;
    detail::check_sheet(n, j, "first_coefficient");
    const detail::PhaseTable phase(n, j);
    const LaurentSeries X = compute_X(spec, j, budget).truncated(budget);
    const LaurentSeries X1 = differentiate(X);
    const LaurentSeries X2 = differentiate(X1);
    const LaurentSeries B2 = X1 * X1 + X2;

    LaurentSeries out = ray_tail_integral(B2) * ((n - 1.0) / 2.0 * phase(-1));
    for (unsigned k = 0; k + 2 <= n; ++k) {
        const LaurentSeries p1 = detail::psi_entry(spec, k, 1, budget);
        const LaurentSeries p2 = detail::psi_entry(spec, k, 2, budget);
        if (k > 0 && !p1.is_zero()) {
            out += ray_tail_integral(X1 * p1) * (-static_cast<double>(k) / n * phase(k));
        }
        if (!p2.is_zero()) out += ray_tail_integral(p2) * (-1.0 / n * phase(k + 1));
    }
    return out;
}

struct GevreyReport {
    /// r_m = |A_{m+1}(xi) / A_m(xi)| / (m+1), m = 1..M-1.
    std::vector<double> ratios;
    /// Raw radius sequence of the chosen estimator, indexed from its first m.
    std::vector<double> radius_sequence;
    double radius_estimate = std::numeric_limits<double>::infinity();
    std::string estimator;
    bool superfactorial = false;
    bool degenerate = false;
    /// frak_a(n) * d: radius of the disc on which convergence is guaranteed.
    double guaranteed_radius = 0.0;
};

namespace detail {

// Least-squares fit r_m = R + c/m over the given tail; returns R.
inline double extrapolate_inverse_m(const std::vector<double>& ms, const std::vector<double>& rs) {
    const double N = static_cast<double>(ms.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double x = 1.0 / ms[i];
        sx += x;
        sy += rs[i];
        sxx += x * x;
        sxy += x * rs[i];
    }
    const double den = N * sxx - sx * sx;
    if (den == 0.0) return sy / N;
    const double slope = (N * sxy - sx * sy) / den;
    return (sy - slope * sx) / N;
}

inline double relative_spread(const std::vector<double>& v, std::size_t last) {
    if (v.size() < last) last = v.size();
    if (last == 0) return INFINITY;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t i = v.size() - last; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) return INFINITY;
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    return (hi - lo) / std::max(std::abs(hi), 1e-300);
}

}  // namespace detail

/// Empirical Gevrey-1 check on A_m(xi): the Borel coefficients
/// b_m = A_{m+1}(xi)/m! should behave like R^{-m} times a power of m, with R
/// the distance to the nearest Borel-plane singularity. R is estimated from
/// the ratio |b_{m-1}/b_m| and from the Hankel ratio |H_{m-1}/H_m|^{1/2},
/// H_m = b_m b_{m-2} - b_{m-1}^2 (which also sees conjugate singularity
/// pairs), each extrapolated linearly in 1/m; the steadier one is reported.
inline GevreyReport gevrey_diagnostics(const CoefficientTable& table, Complex xi, double d) {
    if (table.M < 5 || table.A.size() < 6) throw DomainError("gevrey_diagnostics: need M >= 5");
    GevreyReport rep;
    rep.guaranteed_radius = frak_a(table.n).value * d;

    std::vector<Complex> v;
    for (const auto& a : table.A) v.push_back(evaluate(a, xi));
    bool all_zero = true;
    for (std::size_t m = 1; m < v.size(); ++m) all_zero = all_zero && v[m] == Complex{};
    if (all_zero) {
        rep.degenerate = true;
        rep.estimator = "none";
        return rep;
    }
    for (std::size_t m = 1; m + 1 < v.size(); ++m) {
        rep.ratios.push_back(std::abs(v[m + 1] / v[m]) / static_cast<double>(m + 1));
    }

    std::vector<Complex> b;
    double fact = 1.0;
    for (std::size_t m = 0; m + 1 < v.size(); ++m) {
        if (m > 0) fact *= static_cast<double>(m);
        b.push_back(v[m + 1] / fact);
    }

    std::vector<double> m1, r1, m2, r2;
    for (std::size_t m = 1; m < b.size(); ++m) {
        m1.push_back(static_cast<double>(m));
        r1.push_back(std::abs(b[m - 1] / b[m]));
    }
    auto H = [&](std::size_t m) { return b[m] * b[m - 2] - b[m - 1] * b[m - 1]; };
    for (std::size_t m = 3; m < b.size(); ++m) {
        m2.push_back(static_cast<double>(m));
        r2.push_back(std::sqrt(std::abs(H(m - 1) / H(m))));
    }

    auto tail_fit = [](const std::vector<double>& ms, const std::vector<double>& rs) {
        const std::size_t len = std::max<std::size_t>(2, rs.size() / 3);
        if (rs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
        std::vector<double> mt(ms.end() - static_cast<std::ptrdiff_t>(len), ms.end());
        std::vector<double> rt(rs.end() - static_cast<std::ptrdiff_t>(len), rs.end());
        for (double x : rt) {
            if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
        }
        return detail::extrapolate_inverse_m(mt, rt);
    };
    const double R1 = tail_fit(m1, r1);
    const double R2 = tail_fit(m2, r2);
    const double s1 = std::isfinite(R1) ? detail::relative_spread(r1, 6) : INFINITY;
    const double s2 = std::isfinite(R2) ? detail::relative_spread(r2, 6) : INFINITY;
    if (s2 < s1) {
        rep.radius_estimate = R2;
        rep.estimator = "hankel";
        rep.radius_sequence = r2;
    } else {
        rep.radius_estimate = R1;
        rep.estimator = "ratio";
        rep.radius_sequence = r1;
    }

    // A radius sequence that keeps shrinking like a power of m means the
    // coefficients outgrow m! C^m.
    const auto& seq = rep.radius_sequence;
    if (seq.size() >= 6) {
        const std::size_t len = std::max<std::size_t>(3, seq.size() / 3);
        const std::size_t i0 = seq.size() - len;
        const double lm0 = std::log(static_cast<double>(i0 + 1));
        const double lm1 = std::log(static_cast<double>(seq.size()));
        const double slope = (std::log(seq.back()) - std::log(seq[i0])) / (lm1 - lm0);
        rep.superfactorial = slope < -0.5;
    }
    if (!(rep.radius_estimate > 0.0)) rep.superfactorial = true;
    return rep;
}

}  // namespace borelwkb
