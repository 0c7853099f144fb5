#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "borelwkb/errors.hpp"

namespace borelwkb {

namespace detail {

inline void check_sheet(unsigned n, unsigned j, const char* who) {
    if (n < 2) throw DomainError(std::string(who) + ": n must be >= 2");
    if (j >= n) {
        throw DomainError(std::string(who) + ": index " + std::to_string(j) + " out of range for n = " +
                          std::to_string(n));
    }
}

// e^{2 pi i k / n} with k reduced mod n first, so equal phases are bit-identical.
inline std::complex<double> root_of_unity(unsigned n, long long k) {
    const long long r = ((k % static_cast<long long>(n)) + n) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

}  // namespace detail

/// theta_{j,l} = -arg(e^{2 pi i l/n} - e^{2 pi i j/n}), with the 2 pi ambiguity
/// fixed by the representative
///   ((2 - sgn(j - l)) n - 2(j + l)) pi / (2n),
/// for which max_l - min_l equals (n - 2) pi / n.
inline double theta_jl(unsigned n, unsigned j, unsigned l) {
    detail::check_sheet(n, j, "theta_jl");
    detail::check_sheet(n, l, "theta_jl");
    if (l == j) throw DomainError("theta_jl: l must differ from j");
    const int sgn = j > l ? 1 : -1;
    const double pi = std::numbers::pi;
    const double closed = ((2.0 - sgn) * n - 2.0 * (j + l)) * pi / (2.0 * n);
    const double raw = -std::arg(detail::root_of_unity(n, l) - detail::root_of_unity(n, j));
    // The raw angle carries rounding from the complex subtraction; keep the
    // closed form when they agree modulo 2 pi.
    const double shift = std::round((closed - raw) / (2.0 * pi));
    const double aligned = raw + 2.0 * pi * shift;
    return std::abs(aligned - closed) < 1e-9 ? closed : aligned;
}

/// (min_l theta_{j,l}, max_l theta_{j,l}).
inline std::pair<double, double> theta_range(unsigned n, unsigned j) {
    detail::check_sheet(n, j, "theta_range");
    double lo = INFINITY;
    double hi = -INFINITY;
    for (unsigned l = 0; l < n; ++l) {
        if (l == j) continue;
        const double t = theta_jl(n, j, l);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return {lo, hi};
}

/// Direction of the integration ray P_j(xi): midpoint of the theta_{j,l}.
inline double theta_j(unsigned n, unsigned j) {
    const auto [lo, hi] = theta_range(n, j);
    return 0.5 * (lo + hi);
}

/// A point on the sheet 0 < arg < 2 pi (or a rotation of it), given in polar
/// form so that the argument is never reconstructed from a branch cut.
struct SheetPoint {
    double modulus = 0.0;
    double arg = 0.0;

    static SheetPoint from_complex(std::complex<double> z) {
        double a = std::arg(z);
        if (a <= 0.0) a += 2.0 * std::numbers::pi;
        return {std::abs(z), a};
    }

    [[nodiscard]] std::complex<double> value() const { return std::polar(modulus, arg); }
};

struct DomainSpec {
    unsigned n = 3;
    unsigned j = 0;
    double d = 1.0;
    double eps = 0.1;

    void validate() const {
        detail::check_sheet(n, j, "DomainSpec");
        if (!(d > 0.0)) throw DomainError("DomainSpec: d must be positive");
        if (!(eps > 0.0)) throw DomainError("DomainSpec: eps must be positive");
    }
};

/// Boundary rays arg = (n-2) pi/(2n) and (3n+2) pi/(2n) of the sector domain
/// on sheet 0.
inline std::pair<double, double> airy_boundary_args(unsigned n) {
    const double pi = std::numbers::pi;
    return {(n - 2.0) * pi / (2.0 * n), (3.0 * n + 2.0) * pi / (2.0 * n)};
}

/// Euclidean distance from the polar point (r, phi) to the closed half-line
/// from the origin in direction psi.
inline double distance_to_ray(double r, double phi, double psi) {
    const double delta = phi - psi;
    return std::cos(delta) >= 0.0 ? r * std::abs(std::sin(delta)) : r;
}

/// Membership in Gamma_j(d) = e^{-2 pi i j/n} Gamma_0(d), where Gamma_0(d) is
/// the punctured sector between the two boundary rays with closed d + eps
/// neighbourhoods of those rays removed.
inline bool airy_domain_contains(const DomainSpec& spec, SheetPoint xi) {
    spec.validate();
    if (xi.modulus == 0.0) throw ZeroPointError("airy_domain_contains: xi = 0");
    const double pi = std::numbers::pi;
    const double phi = xi.arg + 2.0 * pi * spec.j / spec.n;
    if (!(phi > 0.0 && phi < 2.0 * pi)) return false;
    if (!(xi.modulus > spec.eps)) return false;
    const auto [lo, hi] = airy_boundary_args(spec.n);
    if (!(phi > lo && phi < hi)) return false;
    const double clearance = spec.d + spec.eps;
    return distance_to_ray(xi.modulus, phi, lo) > clearance && distance_to_ray(xi.modulus, phi, hi) > clearance;
}

/// Lifts a plain complex xi to the sheet of Gamma_j: the argument is chosen
/// so that the rotated point xi e^{2 pi i j/n} has argument in (0, 2 pi].
inline SheetPoint sheet_point(unsigned n, unsigned j, std::complex<double> xi) {
    detail::check_sheet(n, j, "sheet_point");
    const SheetPoint rotated = SheetPoint::from_complex(xi * detail::root_of_unity(n, j));
    return {rotated.modulus, rotated.arg - 2.0 * std::numbers::pi * j / n};
}

inline bool airy_domain_contains(const DomainSpec& spec, std::complex<double> xi) {
    if (xi == std::complex<double>{}) throw ZeroPointError("airy_domain_contains: xi = 0");
    spec.validate();
    return airy_domain_contains(spec, sheet_point(spec.n, spec.j, xi));
}

/// Distance from xi (on the rotated sheet) to the nearer boundary ray, minus
/// eps: the largest d for which xi still lies in Gamma_j(d) (up to the open
/// inequality). Non-positive outside the sector.
inline double airy_boundary_clearance(unsigned n, unsigned j, double eps, SheetPoint xi) {
    detail::check_sheet(n, j, "airy_boundary_clearance");
    const double phi = xi.arg + 2.0 * std::numbers::pi * j / n;
    const auto [lo, hi] = airy_boundary_args(n);
    if (!(phi > lo && phi < hi)) return 0.0;
    return std::min(distance_to_ray(xi.modulus, phi, lo), distance_to_ray(xi.modulus, phi, hi)) - eps;
}

}  // namespace borelwkb
