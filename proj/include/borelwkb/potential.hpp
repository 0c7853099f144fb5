#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borelwkb/combinatorics.hpp"
#include "borelwkb/errors.hpp"
#include "borelwkb/laurent.hpp"

namespace borelwkb {

/// Potentials psi_k(u, xi) ~ delta_{0k} + sum_{m>=1} psi_{k,m}(xi) u^{-m},
/// 0 <= k <= n-2, stored as a sparse table of Laurent series. Missing entries
/// are zero; the leading 1 of psi_0 is implicit.
struct PotentialSpec {
    unsigned n = 2;
    double rho = 1.0;
    unsigned max_order = 0;
    std::map<std::pair<unsigned, unsigned>, LaurentSeries> psi;

    /// psi_{k,m} or nullptr when the entry is absent.
    [[nodiscard]] const LaurentSeries* find(unsigned k, unsigned m) const {
        auto it = psi.find({k, m});
        return it == psi.end() ? nullptr : &it->second;
    }

    void set(unsigned k, unsigned m, LaurentSeries s) {
        if (n < 2) throw DomainError("PotentialSpec: n must be >= 2");
        if (k + 2 > n) {
            throw DomainError("PotentialSpec: k = " + std::to_string(k) + " exceeds n - 2 = " + std::to_string(n - 2));
        }
        if (m == 0) throw DomainError("PotentialSpec: order m must be >= 1");
        max_order = std::max(max_order, m);
        psi[{k, m}] = std::move(s);
    }
};

struct PotentialEntryReport {
    unsigned k = 0;
    unsigned m = 0;
    std::optional<std::size_t> min_exponent;
    bool ok = true;
};

struct PotentialReport {
    std::vector<PotentialEntryReport> entries;
    std::vector<std::string> failures;

    [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Checks that every psi_{k,m} decays at least like xi^{-2}, so that its tail
/// integral along any admissible ray converges.
inline PotentialReport validate(const PotentialSpec& spec) {
    PotentialReport rep;
    if (spec.n < 2) rep.failures.push_back("n must be >= 2");
    for (const auto& [key, series] : spec.psi) {
        const auto [k, m] = key;
        PotentialEntryReport e{k, m, series.min_exponent(), true};
        if (k + 2 > spec.n || m == 0) {
            e.ok = false;
            rep.failures.push_back("psi_{" + std::to_string(k) + "," + std::to_string(m) + "}: index out of range");
        } else if (e.min_exponent && *e.min_exponent < 2) {
            e.ok = false;
            rep.failures.push_back("psi_{" + std::to_string(k) + "," + std::to_string(m) + "}: term xi^-" +
                                   std::to_string(*e.min_exponent) + " decays too slowly (need exponent >= 2)");
        }
        rep.entries.push_back(e);
    }
    return rep;
}

/// Exact rational coefficient c_k with psi_{k,n-k}(xi) = c_k xi^{-(n-k)} for
/// the equation -w^{(n)} + u^n z w = 0 after the Liouville transformation
/// xi = n/(n+1) z^{1+1/n}.
inline BigRational airy_psi_coefficient(unsigned n, unsigned k) {
    if (n < 2 || k + 2 > n) throw DomainError("airy_psi_coefficient: need 0 <= k <= n-2");
    const BigRational inv_n(1, static_cast<int>(n));
    // Arguments x_i = (-1/n)_{i-1}; B_{p,k} only reads x_1..x_{p-k+1}.
    std::vector<BigRational> xs;
    for (unsigned i = 1; i <= n; ++i) xs.push_back(pochhammer(BigRational(-inv_n), i - 1));
    const BigRational half_shift = BigRational(1, 2) - BigRational(1, static_cast<int>(2 * n));
    const auto tri = partial_bell_triangle<BigRational>(n, std::span<const BigRational>(xs), BigRational(1));
    BigRational sum = 0;
    for (unsigned p = k; p <= n; ++p) {
        sum += BigRational(binomial(n, p)) * pochhammer(half_shift, n - p) * tri[p][k];
    }
    BigRational factor = 1;
    const BigRational base(-static_cast<int>(n), static_cast<int>(n + 1));
    for (unsigned i = 0; i < n - k; ++i) factor *= base;
    return -factor * sum;
}

/// The Airy-type family: psi_{k,n-k} = c_k xi^{-(n-k)} for 0 <= k <= n-2, all
/// other entries zero. Entries are trusted to exponent M + n + 4, and
/// max_order covers every nonzero entry even when M < n.
inline PotentialSpec airy_family(unsigned n, unsigned M) {
    if (n < 2) throw DomainError("airy_family: n must be >= 2");
    PotentialSpec spec;
    spec.n = n;
    spec.rho = 1.0;
    const std::size_t vt = static_cast<std::size_t>(M) + n + 4;
    for (unsigned k = 0; k + 2 <= n; ++k) {
        const double c = static_cast<double>(airy_psi_coefficient(n, k));
        spec.set(k, n - k, LaurentSeries::monomial(c, n - k, vt));
    }
    spec.max_order = std::max(M, n);
    return spec;
}

}  // namespace borelwkb
