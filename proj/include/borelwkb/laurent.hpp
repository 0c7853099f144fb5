#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borelwkb/errors.hpp"

namespace borelwkb {

using Complex = std::complex<double>;

/// Truncated series sum_s c_s xi^{-s} in descending powers of xi, s >= 0.
///
/// Every series carries a truncation order `valid_to`: coefficients with
/// exponent <= valid_to are trusted, anything beyond is unknown and is never
/// stored. Operations propagate `valid_to` pessimistically, so the terms a
/// result reports are always backed by its inputs.
class LaurentSeries {
public:
    using Scalar = Complex;

    LaurentSeries() = default;

    /// The zero series, trusted up to `valid_to`.
    explicit LaurentSeries(std::size_t valid_to) : valid_to_(valid_to) {}

    /// Dense coefficients c_0, c_1, ...; `coeffs.size()` must not exceed
    /// valid_to + 1 unless the excess entries are zero.
    LaurentSeries(std::vector<Scalar> coeffs, std::size_t valid_to) : c_(std::move(coeffs)), valid_to_(valid_to) {
        trim();
        if (!c_.empty() && c_.size() - 1 > valid_to_) {
            throw DomainError("LaurentSeries: term xi^-" + std::to_string(c_.size() - 1) + " lies beyond valid_to = " +
                              std::to_string(valid_to_));
        }
    }

    static LaurentSeries constant(Scalar c, std::size_t valid_to) { return LaurentSeries({c}, valid_to); }

    static LaurentSeries monomial(Scalar c, std::size_t exponent, std::size_t valid_to) {
        std::vector<Scalar> v(exponent + 1, Scalar{});
        v[exponent] = c;
        return LaurentSeries(std::move(v), valid_to);
    }

    static LaurentSeries from_terms(const std::vector<std::pair<std::size_t, Scalar>>& terms, std::size_t valid_to) {
        std::vector<Scalar> v;
        for (const auto& [s, c] : terms) {
            if (s > valid_to) {
                throw DomainError("LaurentSeries: term xi^-" + std::to_string(s) + " lies beyond valid_to = " +
                                  std::to_string(valid_to));
            }
            if (v.size() <= s) v.resize(s + 1, Scalar{});
            v[s] += c;
        }
        return LaurentSeries(std::move(v), valid_to);
    }

    [[nodiscard]] std::size_t valid_to() const { return valid_to_; }

    [[nodiscard]] Scalar coefficient(std::size_t s) const { return s < c_.size() ? c_[s] : Scalar{}; }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }

    /// Smallest exponent with a nonzero coefficient; empty for the zero series.
    [[nodiscard]] std::optional<std::size_t> min_exponent() const {
        for (std::size_t s = 0; s < c_.size(); ++s) {
            if (c_[s] != Scalar{}) return s;
        }
        return std::nullopt;
    }

    /// Guaranteed decay: the series is O(xi^{-decay_order()}). For the zero
    /// series this is the first untrusted exponent.
    [[nodiscard]] std::size_t decay_order() const { return min_exponent().value_or(valid_to_ + 1); }

    /// Highest exponent stored (0 for the zero series).
    [[nodiscard]] std::size_t max_exponent() const { return c_.empty() ? 0 : c_.size() - 1; }

    [[nodiscard]] std::vector<std::pair<std::size_t, Scalar>> terms() const {
        std::vector<std::pair<std::size_t, Scalar>> out;
        for (std::size_t s = 0; s < c_.size(); ++s) {
            if (c_[s] != Scalar{}) out.emplace_back(s, c_[s]);
        }
        return out;
    }

    [[nodiscard]] const std::vector<Scalar>& dense() const { return c_; }

    /// Drop everything beyond `valid_to` (never raises the truncation order).
    [[nodiscard]] LaurentSeries truncated(std::size_t valid_to) const {
        const std::size_t vt = std::min(valid_to, valid_to_);
        std::vector<Scalar> v(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(c_.size(), vt + 1)));
        return LaurentSeries(std::move(v), vt);
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        const std::size_t vt = std::min(a.valid_to_, b.valid_to_);
        std::vector<Scalar> v(std::min(std::max(a.c_.size(), b.c_.size()), vt + 1), Scalar{});
        for (std::size_t s = 0; s < v.size(); ++s) v[s] = a.coefficient(s) + b.coefficient(s);
        return LaurentSeries(std::move(v), vt);
    }

    friend LaurentSeries operator-(const LaurentSeries& a) {
        LaurentSeries r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        const std::size_t vt = std::min(a.valid_to_ + b.decay_order(), b.valid_to_ + a.decay_order());
        if (a.is_zero() || b.is_zero()) return LaurentSeries(vt);
        std::vector<Scalar> v(std::min(a.c_.size() + b.c_.size() - 1, vt + 1), Scalar{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == Scalar{}) continue;
            for (std::size_t k = 0; k < b.c_.size() && i + k < v.size(); ++k) v[i + k] += a.c_[i] * b.c_[k];
        }
        return LaurentSeries(std::move(v), vt);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, Scalar k) {
        LaurentSeries r = a;
        for (auto& c : r.c_) c *= k;
        r.trim();
        return r;
    }

    friend LaurentSeries operator*(Scalar k, const LaurentSeries& a) { return a * k; }

    LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.valid_to_ == b.valid_to_ && a.c_ == b.c_;
    }

    /// d/dxi: c_s xi^{-s} -> -s c_s xi^{-s-1}.
    friend LaurentSeries differentiate(const LaurentSeries& a) {
        std::vector<Scalar> v(a.c_.empty() ? 0 : a.c_.size() + 1, Scalar{});
        for (std::size_t s = 1; s < a.c_.size(); ++s) v[s + 1] = -static_cast<double>(s) * a.c_[s];
        return LaurentSeries(std::move(v), a.valid_to_ + 1);
    }

    /// Integral of the series from xi to infinity along any ray on which the
    /// integrand decays: c_s xi^{-s} -> c_s xi^{-(s-1)} / (s-1). Requires the
    /// coefficients of xi^0 and xi^-1 to vanish.
    friend LaurentSeries ray_tail_integral(const LaurentSeries& a) {
        for (std::size_t s = 0; s < std::min<std::size_t>(2, a.c_.size()); ++s) {
            if (a.c_[s] != Scalar{}) {
                throw NonIntegrableTerm("ray_tail_integral: term xi^-" + std::to_string(s) +
                                        " has a divergent tail integral");
            }
        }
        std::vector<Scalar> v(a.c_.empty() ? 0 : a.c_.size() - 1, Scalar{});
        for (std::size_t s = 2; s < a.c_.size(); ++s) v[s - 1] = a.c_[s] / static_cast<double>(s - 1);
        return LaurentSeries(std::move(v), a.valid_to_ == 0 ? 0 : a.valid_to_ - 1);
    }

    /// Point value at xi != 0, Horner from the highest exponent down.
    friend Scalar evaluate(const LaurentSeries& a, Scalar xi) {
        if (xi == Scalar{}) throw ZeroPointError("LaurentSeries::evaluate at xi = 0");
        const Scalar w = 1.0 / xi;
        Scalar acc{};
        for (std::size_t s = a.c_.size(); s-- > 0;) acc = acc * w + a.c_[s];
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Scalar{}) c_.pop_back();
    }

    std::vector<Scalar> c_;
    std::size_t valid_to_ = 0;
};

}  // namespace borelwkb
