#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "borelwkb/errors.hpp"

namespace borelwkb {

/// Rational function p(t)/q(t) with q(0) = 1.
struct RationalApprox {
    std::vector<std::complex<double>> p;
    std::vector<std::complex<double>> q{1.0};

    [[nodiscard]] std::complex<double> operator()(std::complex<double> t) const {
        return horner(p, t) / horner(q, t);
    }

    [[nodiscard]] std::size_t numerator_degree() const { return p.empty() ? 0 : p.size() - 1; }
    [[nodiscard]] std::size_t denominator_degree() const { return q.size() - 1; }

    /// Zeros of q, from the eigenvalues of its companion matrix.
    [[nodiscard]] std::vector<std::complex<double>> poles() const {
        const std::size_t deg = denominator_degree();
        if (deg == 0) return {};
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
        for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        for (std::size_t i = 0; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -q[i] / q[deg];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        std::vector<std::complex<double>> out;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
        return out;
    }

    static std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> t) {
        std::complex<double> acc{};
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    }
};

/// Type-[m/n] Pade approximant of sum c_k t^k by the SVD-based robust
/// algorithm of Gonnet, Guttel and Trefethen: the denominator degree is
/// lowered until the Toeplitz block has full rank (relative tolerance `tol`),
/// and spurious common factors t^k are removed, so near-degenerate data
/// gives a lower-degree approximant instead of Froissart doublets.
inline RationalApprox robust_pade(std::span<const std::complex<double>> c, std::size_t m, std::size_t n,
                                  double tol = 1e-14) {
    using Mat = Eigen::MatrixXcd;
    using Idx = Eigen::Index;
    if (c.size() < m + n + 1) {
        throw DomainError("robust_pade: need " + std::to_string(m + n + 1) + " coefficients, got " +
                          std::to_string(c.size()));
    }
    auto coef = [&](std::ptrdiff_t k) { return k < 0 ? std::complex<double>{} : c[static_cast<std::size_t>(k)]; };
    double norm = 0.0;
    for (std::size_t k = 0; k <= m + n; ++k) norm += std::norm(c[k]);
    norm = std::sqrt(norm);
    RationalApprox r;
    if (norm == 0.0) return r;

    const double cut = tol * norm;
    Eigen::VectorXcd b = Eigen::VectorXcd::Ones(1);
    while (n > 0) {
        Mat Z(static_cast<Idx>(n), static_cast<Idx>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k <= n; ++k) {
                Z(static_cast<Idx>(i), static_cast<Idx>(k)) = coef(static_cast<std::ptrdiff_t>(m + 1 + i) - k);
            }
        }
        Eigen::JacobiSVD<Mat> svd(Z, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        std::size_t rho = 0;
        for (Idx i = 0; i < s.size(); ++i) rho += s(i) > cut ? 1 : 0;
        if (rho == n) {
            b = svd.matrixV().col(static_cast<Idx>(n));
            break;
        }
        const std::size_t drop = n - rho;
        m = m >= drop ? m - drop : 0;
        n = rho;
    }

    std::vector<std::complex<double>> q(b.data(), b.data() + b.size());
    std::vector<std::complex<double>> p(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        std::complex<double> acc{};
        for (std::size_t k = 0; k < q.size(); ++k) acc += coef(static_cast<std::ptrdiff_t>(i) - k) * q[k];
        p[i] = acc;
    }
    // Divide out a common factor t^lam (leading zeros of q force those of p).
    std::size_t lam = 0;
    while (lam + 1 < q.size() && std::abs(q[lam]) <= tol) ++lam;
    if (lam > 0) {
        q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(lam));
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(std::min(lam, p.size())));
    }
    while (q.size() > 1 && std::abs(q.back()) <= tol) q.pop_back();
    while (!p.empty() && std::abs(p.back()) <= cut) p.pop_back();
    const std::complex<double> q0 = q.front();
    for (auto& x : q) x /= q0;
    for (auto& x : p) x /= q0;
    r.p = std::move(p);
    r.q = std::move(q);
    return r;
}

}  // namespace borelwkb
