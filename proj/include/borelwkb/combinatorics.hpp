#pragma once

#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "borelwkb/errors.hpp"

namespace borelwkb {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Anything with a commutative ring structure that the Bell-polynomial
/// recurrences can run over: scalars, rationals, truncated series.
template <class T>
concept CommutativeAlgebra = std::copyable<T> && requires(const T& a, const T& b) {
    { a + b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
};

namespace detail {

// Callers pass T explicitly so expression-template operands convert first.
template <class T>
T scale_by(const std::type_identity_t<T>& x, std::int64_t c) {
    if constexpr (requires { x * c; }) {
        return T(x * c);
    } else {
        return x * static_cast<double>(c);
    }
}

// Pascal row cache in 64-bit; exact for n <= 62.
inline std::int64_t small_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * static_cast<std::int64_t>(n - k + i) / static_cast<std::int64_t>(i);
    }
    return r;
}

}  // namespace detail

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) {
        throw DomainError("binomial: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    }
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Rising factorial w(w+1)...(w+m-1); the empty product is 1.
template <class T>
T pochhammer(const T& w, unsigned m) {
    T r = T(1);
    for (unsigned i = 0; i < m; ++i) r = r * (w + T(static_cast<int>(i)));
    return r;
}

/// Triangle of partial exponential Bell polynomials B_{p,r}(x_1, x_2, ...)
/// for 0 <= r <= p <= p_max, built with
///   B_{p+1,r+1} = sum_{q=0}^{p-r} C(p,q) x_{q+1} B_{p-q,r}.
/// Row p of the result holds B_{p,0..p}. `xs[i]` is x_{i+1}.
template <CommutativeAlgebra T>
std::vector<std::vector<T>> partial_bell_triangle(std::size_t p_max, std::span<const T> xs, const T& one) {
    if (p_max > 0 && xs.size() < p_max) {
        throw InsufficientArguments("partial_bell_triangle: need " + std::to_string(p_max) +
                                    " arguments, got " + std::to_string(xs.size()));
    }
    const T zero = detail::scale_by<T>(one, 0);
    std::vector<std::vector<T>> tri(p_max + 1);
    for (std::size_t p = 0; p <= p_max; ++p) tri[p].assign(p + 1, zero);
    tri[0][0] = one;
    for (std::size_t p = 0; p < p_max; ++p) {
        for (std::size_t r = 0; r <= p; ++r) {
            T acc = zero;
            for (std::size_t q = 0; q + r <= p; ++q) {
                acc = acc + detail::scale_by<T>(xs[q] * tri[p - q][r], detail::small_binomial(static_cast<unsigned>(p),
                                                                                           static_cast<unsigned>(q)));
            }
            tri[p + 1][r + 1] = acc;
        }
    }
    return tri;
}

/// Partial exponential Bell polynomial B_{p,r}(x_1, ..., x_{p-r+1}).
template <CommutativeAlgebra T>
T partial_bell(std::size_t p, std::size_t r, std::span<const T> xs, const T& one) {
    const T zero = detail::scale_by<T>(one, 0);
    if (r > p) return zero;
    if (r == 0) return p == 0 ? one : zero;
    if (xs.size() < p - r + 1) {
        throw InsufficientArguments("partial_bell: B_{" + std::to_string(p) + "," + std::to_string(r) + "} needs " +
                                    std::to_string(p - r + 1) + " arguments, got " + std::to_string(xs.size()));
    }
    // Only x_1..x_{p-r+1} can appear; pad the rest so the triangle builder has
    // a full argument list.
    std::vector<T> padded(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(p - r + 1));
    padded.resize(p, zero);
    return partial_bell_triangle<T>(p, padded, one)[p][r];
}

template <CommutativeAlgebra T>
T partial_bell(std::size_t p, std::size_t r, std::span<const T> xs) {
    return partial_bell<T>(p, r, xs, T(1));
}

/// Complete exponential Bell polynomials B_0..B_{p_max}, via
///   B_{p+1} = sum_{q=0}^{p} C(p,q) x_{q+1} B_{p-q}.
template <CommutativeAlgebra T>
std::vector<T> complete_bell_sequence(std::size_t p_max, std::span<const T> xs, const T& one) {
    if (xs.size() < p_max) {
        throw InsufficientArguments("complete_bell: need " + std::to_string(p_max) + " arguments, got " +
                                    std::to_string(xs.size()));
    }
    std::vector<T> b;
    b.reserve(p_max + 1);
    b.push_back(one);
    for (std::size_t p = 0; p < p_max; ++p) {
        T acc = detail::scale_by<T>(one, 0);
        for (std::size_t q = 0; q <= p; ++q) {
            acc = acc + detail::scale_by<T>(xs[q] * b[p - q],
                                         detail::small_binomial(static_cast<unsigned>(p), static_cast<unsigned>(q)));
        }
        b.push_back(acc);
    }
    return b;
}

template <CommutativeAlgebra T>
T complete_bell(std::size_t p, std::span<const T> xs, const T& one) {
    return complete_bell_sequence<T>(p, xs, one).back();
}

template <CommutativeAlgebra T>
T complete_bell(std::size_t p, std::span<const T> xs) {
    return complete_bell<T>(p, xs, T(1));
}

/// Unsigned Stirling numbers of the first kind |s(m,r)| for 0 <= r <= m <= m_max.
inline std::vector<std::vector<BigInt>> stirling_first_table(unsigned m_max) {
    std::vector<std::vector<BigInt>> s(m_max + 1);
    for (unsigned m = 0; m <= m_max; ++m) s[m].assign(m + 1, BigInt(0));
    s[0][0] = 1;
    for (unsigned m = 0; m < m_max; ++m) {
        for (unsigned r = 1; r <= m + 1; ++r) {
            BigInt v = s[m][r - 1];
            if (r <= m) v += BigInt(m) * s[m][r];
            s[m + 1][r] = v;
        }
    }
    return s;
}

inline BigInt stirling_first_unsigned(unsigned m, unsigned r) {
    if (r > m) {
        throw DomainError("stirling_first_unsigned: r = " + std::to_string(r) + " exceeds m = " + std::to_string(m));
    }
    return stirling_first_table(m)[m][r];
}

}  // namespace borelwkb
