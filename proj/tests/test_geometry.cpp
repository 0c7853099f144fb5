#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "borelwkb/geometry.hpp"
#include "borelwkb/quadrature.hpp"

using namespace borelwkb;
using C = std::complex<double>;
constexpr double pi = std::numbers::pi;

TEST(Theta, ClosedFormsForN3) {
    EXPECT_NEAR(theta_jl(3, 0, 1), 7 * pi / 6, 1e-14);
    EXPECT_NEAR(theta_jl(3, 0, 2), 5 * pi / 6, 1e-14);
    EXPECT_NEAR(theta_j(3, 0), pi, 1e-14);
    EXPECT_NEAR(std::remainder(theta_jl(2, 0, 1) - pi, 2 * pi), 0.0, 1e-14);
    EXPECT_NEAR(std::remainder(theta_j(2, 0) - pi, 2 * pi), 0.0, 1e-14);
}

TEST(Theta, RejectsBadIndices) {
    EXPECT_THROW(theta_jl(3, 1, 1), DomainError);
    EXPECT_THROW(theta_jl(3, 0, 3), DomainError);
    EXPECT_THROW(theta_j(4, 4), DomainError);
}

TEST(Theta, SpreadAndMidpoint) {
    const auto [lo5, hi5] = theta_range(5, 2);
    EXPECT_NEAR(hi5 - lo5, 3 * pi / 5, 1e-14);
    for (unsigned n = 2; n <= 12; ++n) {
        for (unsigned j = 0; j < n; ++j) {
            const auto [lo, hi] = theta_range(n, j);
            EXPECT_NEAR(hi - lo, (n - 2.0) * pi / n, 1e-12) << n << ' ' << j;
            const double tj = theta_j(n, j);
            for (unsigned l = 0; l < n; ++l) {
                if (l == j) continue;
                EXPECT_LT(std::abs(tj - theta_jl(n, j, l)), pi / 2) << n << ' ' << j << ' ' << l;
            }
        }
    }
}

TEST(Theta, DecayDirection) {
    for (unsigned n = 2; n <= 12; ++n) {
        for (unsigned j = 0; j < n; ++j) {
            for (unsigned l = 0; l < n; ++l) {
                if (l == j) continue;
                const C diff = std::polar(1.0, 2 * pi * l / n) - std::polar(1.0, 2 * pi * j / n);
                const double re = (diff * std::polar(1.0, theta_jl(n, j, l))).real();
                EXPECT_NEAR(re, std::abs(diff), 1e-12);
                EXPECT_GT(re, 0.0);
            }
        }
    }
}

TEST(Domain, Examples) {
    const DomainSpec spec{3, 0, 0.5, 0.1};
    EXPECT_TRUE(airy_domain_contains(spec, SheetPoint{3.0, pi}));
    EXPECT_FALSE(airy_domain_contains(spec, SheetPoint{3.0, pi / 6}));
    EXPECT_FALSE(airy_domain_contains(spec, SheetPoint{0.05, pi}));
    EXPECT_THROW(airy_domain_contains(spec, C(0.0)), ZeroPointError);
    EXPECT_THROW(airy_domain_contains(DomainSpec{3, 0, 0.0, 0.1}, C(-3.0)), DomainError);
}

TEST(Domain, RotatedSheets) {
    // Gamma_j = e^{-2 pi i j/n} Gamma_0
    for (unsigned n = 2; n <= 6; ++n) {
        for (unsigned j = 0; j < n; ++j) {
            const DomainSpec spec{n, j, 0.3, 0.1};
            const DomainSpec base{n, 0, 0.3, 0.1};
            for (double arg = 0.05; arg < 2 * pi; arg += 0.1) {
                for (double r : {0.5, 2.0, 7.0}) {
                    const C z = std::polar(r, arg);
                    EXPECT_EQ(airy_domain_contains(base, z),
                              airy_domain_contains(spec, z * std::polar(1.0, -2 * pi * j / n)))
                        << n << ' ' << j << ' ' << arg << ' ' << r;
                }
            }
        }
    }
}

TEST(Domain, RaysFromGammaStayInside) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ua(0.0, 2 * pi);
    std::uniform_real_distribution<double> ur(0.2, 20.0);
    for (unsigned n = 2; n <= 6; ++n) {
        for (unsigned j = 0; j < n; ++j) {
            const DomainSpec spec{n, j, 0.5, 0.1};
            int tested = 0;
            while (tested < 30) {
                const C xi = std::polar(ur(rng), ua(rng));
                if (!airy_domain_contains(spec, xi)) continue;
                ++tested;
                for (unsigned l = 0; l < n; ++l) {
                    if (l == j) continue;
                    const C dir = std::polar(1.0, theta_jl(n, j, l));
                    for (double t = 0.0; t <= 100.0; t += 0.5) {
                        ASSERT_TRUE(airy_domain_contains(spec, xi + t * dir)) << n << ' ' << j << ' ' << l << ' ' << t;
                    }
                }
            }
        }
    }
}

TEST(Domain, RayIntegralBound) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ua(0.0, 2 * pi);
    std::uniform_real_distribution<double> ur(0.2, 30.0);
    const unsigned n = 3;
    const DomainSpec spec{n, 0, 0.5, 0.1};
    const double th = theta_j(n, 0);
    const C dir = std::polar(1.0, th);
    int tested = 0;
    while (tested < 50) {
        const C xi = std::polar(ur(rng), ua(rng));
        if (!airy_domain_contains(spec, xi)) continue;
        ++tested;
        auto f = [](C t) { return C(1.0 / (1.0 + std::norm(t))); };
        const double integral = std::abs(quad::ray_integral(f, xi, dir, 1e-9).value);
        const double bound = 4.0 / std::max(1.0, (xi * std::polar(1.0, -th)).real());
        EXPECT_LE(integral, bound) << xi;
    }
}

TEST(SheetPoint, RoundTrip) {
    const SheetPoint p = SheetPoint::from_complex(C(-3.0, 0.0));
    EXPECT_NEAR(p.arg, pi, 1e-15);
    EXPECT_NEAR(SheetPoint::from_complex(C(2.0, 0.0)).arg, 2 * pi, 1e-15);
    EXPECT_NEAR(std::abs(p.value() - C(-3.0, 0.0)), 0.0, 1e-15);
}
