#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "borelwkb/errors.hpp"

namespace borelwkb::series {

// Dense truncated Taylor series c_0 + c_1 z + ... + c_{N-1} z^{N-1}. All
// routines return exactly N coefficients.

template <class T>
T at(const std::vector<T>& a, std::size_t k) {
    return k < a.size() ? a[k] : T(0);
}

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, std::size_t N) {
    std::vector<T> r(N, T(0));
    for (std::size_t i = 0; i < std::min(a.size(), N); ++i) {
        for (std::size_t k = 0; k < b.size() && i + k < N; ++k) r[i + k] += a[i] * b[k];
    }
    return r;
}

template <class T>
std::vector<T> inv(const std::vector<T>& a, std::size_t N) {
    if (a.empty() || a[0] == T(0)) throw DomainError("series::inv: zero constant term");
    std::vector<T> r(N, T(0));
    if (N == 0) return r;
    r[0] = T(1) / a[0];
    for (std::size_t k = 1; k < N; ++k) {
        T acc(0);
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) acc += a[i] * r[k - i];
        r[k] = -acc / a[0];
    }
    return r;
}

/// log a for a_0 = 1, via (log a)' = a'/a.
template <class T>
std::vector<T> log(const std::vector<T>& a, std::size_t N) {
    if (a.empty() || a[0] != T(1)) throw DomainError("series::log: constant term must be 1");
    std::vector<T> da(N, T(0));
    for (std::size_t k = 0; k + 1 < a.size() && k < N; ++k) da[k] = a[k + 1] * T(static_cast<long>(k + 1));
    const std::vector<T> q = mul(da, inv(a, N), N);
    std::vector<T> r(N, T(0));
    for (std::size_t k = 1; k < N; ++k) r[k] = q[k - 1] / T(static_cast<long>(k));
    return r;
}

/// exp a, via k r_k = sum_i i a_i r_{k-i}.
template <class T>
std::vector<T> exp(const std::vector<T>& a, std::size_t N) {
    std::vector<T> r(N, T(0));
    if (N == 0) return r;
    using std::exp;
    r[0] = exp(at(a, 0));
    for (std::size_t k = 1; k < N; ++k) {
        T acc(0);
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) acc += T(static_cast<long>(i)) * a[i] * r[k - i];
        r[k] = acc / T(static_cast<long>(k));
    }
    return r;
}

template <class T>
std::vector<T> scale(std::vector<T> a, const T& c) {
    for (auto& x : a) x *= c;
    return a;
}

}  // namespace borelwkb::series
