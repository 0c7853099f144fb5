#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "borelwkb/laurent.hpp"

using namespace borelwkb;

namespace {

LaurentSeries random_series(std::mt19937_64& rng, std::size_t lo, std::size_t hi, std::size_t vt) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<std::size_t, Complex>> t;
    for (std::size_t s = lo; s <= hi; ++s) t.emplace_back(s, Complex(u(rng), u(rng)));
    return LaurentSeries::from_terms(t, vt);
}

double max_diff(const LaurentSeries& a, const LaurentSeries& b) {
    double d = 0.0;
    const std::size_t top = std::max(a.max_exponent(), b.max_exponent());
    for (std::size_t s = 0; s <= top; ++s) d = std::max(d, std::abs(a.coefficient(s) - b.coefficient(s)));
    return d;
}

}  // namespace

TEST(Laurent, AddExamples) {
    const auto a = LaurentSeries::monomial(1.0, 2, 6);
    EXPECT_EQ(a + LaurentSeries(6), a);
    EXPECT_TRUE((a + (-a)).is_zero());
    const auto s = LaurentSeries::monomial(1.0, 2, 5) + LaurentSeries::monomial(1.0, 3, 3);
    EXPECT_EQ(s.valid_to(), 3u);
}

TEST(Laurent, MultiplyExamples) {
    const auto p = LaurentSeries::monomial(2.0, 1, 10) * LaurentSeries::monomial(3.0, 2, 10);
    EXPECT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.coefficient(3), Complex(6.0));

    const auto a = LaurentSeries::from_terms({{1, 1.0}, {2, 1.0}}, 8);
    EXPECT_EQ(a * LaurentSeries::constant(1.0, 8), a);
    const auto sq = a * a;
    EXPECT_EQ(sq.coefficient(2), Complex(1.0));
    EXPECT_EQ(sq.coefficient(3), Complex(2.0));
    EXPECT_EQ(sq.coefficient(4), Complex(1.0));
    EXPECT_EQ(sq.valid_to(), 9u);
}

TEST(Laurent, ProductDropsTermsBeyondValidity) {
    const auto a = LaurentSeries::from_terms({{1, 1.0}, {3, 1.0}}, 3);
    const auto b = LaurentSeries::from_terms({{2, 1.0}}, 2);
    const auto p = a * b;
    EXPECT_EQ(p.valid_to(), 3u);
    EXPECT_EQ(p.coefficient(3), Complex(1.0));
    EXPECT_EQ(p.max_exponent(), 3u);
}

TEST(Laurent, RejectsTermsBeyondValidTo) {
    EXPECT_THROW(LaurentSeries::monomial(1.0, 5, 3), DomainError);
}

TEST(Laurent, RingAxioms) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, 0, 6, 12);
        const auto b = random_series(rng, 1, 5, 12);
        const auto c = random_series(rng, 2, 7, 12);
        EXPECT_LE(max_diff(a * b, b * a), 1e-13);
        EXPECT_LE(max_diff((a * b) * c, a * (b * c)), 1e-13);
        EXPECT_LE(max_diff(a * (b + c), a * b + a * c), 1e-13);
        EXPECT_LE(max_diff(a + b, b + a), 0.0);
    }
}

TEST(Laurent, DifferentiateExamples) {
    const auto d = differentiate(LaurentSeries::monomial(1.0, 1, 5));
    EXPECT_EQ(d.coefficient(2), Complex(-1.0));
    EXPECT_EQ(d.valid_to(), 6u);
    EXPECT_TRUE(differentiate(LaurentSeries::constant(4.0, 5)).is_zero());
}

TEST(Laurent, LeibnizRule) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 0, 4, 10);
        const auto b = random_series(rng, 1, 5, 10);
        const auto lhs = differentiate(a * b);
        const auto rhs = differentiate(a) * b + a * differentiate(b);
        EXPECT_LE(max_diff(lhs.truncated(rhs.valid_to()), rhs.truncated(lhs.valid_to())), 1e-13);
    }
}

TEST(Laurent, TailIntegralExamples) {
    const auto i2 = ray_tail_integral(LaurentSeries::monomial(1.0, 2, 6));
    EXPECT_NEAR(std::abs(evaluate(i2, 2.0) - 0.5), 0.0, 1e-16);
    const auto i3 = ray_tail_integral(LaurentSeries::monomial(1.0, 3, 6));
    EXPECT_EQ(i3.coefficient(2), Complex(0.5));
    EXPECT_EQ(i3.valid_to(), 5u);
    EXPECT_THROW(ray_tail_integral(LaurentSeries::monomial(1.0, 1, 6)), NonIntegrableTerm);
    EXPECT_THROW(ray_tail_integral(LaurentSeries::constant(1.0, 6)), NonIntegrableTerm);
}

TEST(Laurent, DerivativeOfTailIntegralIsMinusIdentity) {
    // Coefficients divisible by s - 1 take no rounding, so the identity is bit-exact.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> k(-1000, 1000);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<std::size_t, Complex>> t;
        for (std::size_t s = 2; s <= 9; ++s) t.emplace_back(s, Complex(k(rng), k(rng)) * static_cast<double>(s - 1));
        const auto a = LaurentSeries::from_terms(t, 12);
        EXPECT_EQ(differentiate(ray_tail_integral(a)), -a);
    }
    // Otherwise one division and one multiplication: at most one ulp apart.
    const double inf = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 2, 9, 12);
        const auto back = differentiate(ray_tail_integral(a));
        ASSERT_EQ(back.valid_to(), a.valid_to());
        ASSERT_EQ(back.max_exponent(), a.max_exponent());
        for (std::size_t s = 0; s <= a.max_exponent(); ++s) {
            const Complex want = -a.coefficient(s);
            const Complex got = back.coefficient(s);
            for (auto [w, g] : {std::pair{want.real(), got.real()}, std::pair{want.imag(), got.imag()}}) {
                EXPECT_TRUE(g == w || g == std::nextafter(w, inf) || g == std::nextafter(w, -inf))
                    << "s = " << s << ": " << g << " vs " << w;
            }
        }
    }
}

TEST(Laurent, ExponentShifts) {
    const auto a = LaurentSeries::from_terms({{2, 1.0}, {5, 2.0}}, 9);
    const auto i = ray_tail_integral(a);
    const auto d = differentiate(a);
    EXPECT_EQ(i.min_exponent(), 1u);
    EXPECT_EQ(i.max_exponent(), 4u);
    EXPECT_EQ(d.min_exponent(), 3u);
    EXPECT_EQ(d.max_exponent(), 6u);
}

TEST(Laurent, EvaluateExamplesAndHomomorphism) {
    EXPECT_NEAR(evaluate(LaurentSeries::monomial(7.0 / 48.0, 1, 4), -3.0).real(), -7.0 / 144.0, 1e-16);
    EXPECT_EQ(evaluate(LaurentSeries::constant(1.0, 3), Complex(0.3, 2.0)), Complex(1.0));
    EXPECT_EQ(evaluate(LaurentSeries(3), Complex(0.3, 2.0)), Complex(0.0));
    EXPECT_THROW(evaluate(LaurentSeries::constant(1.0, 3), 0.0), ZeroPointError);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 0, 5, 20);
        const auto b = random_series(rng, 0, 5, 20);
        const Complex xi(1.5 + trial, -0.7 * trial);
        const Complex ab = evaluate(a * b, xi);
        EXPECT_LE(std::abs(ab - evaluate(a, xi) * evaluate(b, xi)), 1e-12 * std::abs(ab));
        const Complex s = evaluate(a + b, xi);
        EXPECT_LE(std::abs(s - evaluate(a, xi) - evaluate(b, xi)), 1e-12 * std::abs(s));
    }
}

TEST(Laurent, DecayOrder) {
    EXPECT_FALSE(LaurentSeries(4).min_exponent().has_value());
    EXPECT_EQ(LaurentSeries(4).decay_order(), 5u);
    EXPECT_EQ(LaurentSeries::from_terms({{3, 1.0}, {4, 0.0}}, 4).decay_order(), 3u);
}
