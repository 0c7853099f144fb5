// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "borelwkb/borelwkb.hpp"

using namespace borelwkb;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

Outcome closed_form_coefficients() {
    Outcome o;
    double worst = 0.0;
    for (unsigned n = 2; n <= 6; ++n) {
        const double N = n;
        const double a1 = (N - 1) * (2 * N + 1) / (24 * (N + 1));
        const double a2 = (N - 1) * (2 * N + 1) * (2 * N * N + 23 * N + 23) / (1152 * (N + 1) * (N + 1));
        const CoefficientTable t = compute_coefficients(airy_family(n, 2), 0, 2);
        const double e1 = rel(t.A[1].coefficient(1), a1);
        const double e2 = rel(t.A[2].coefficient(2), a2);
        worst = std::max({worst, e1, e2});
        o.require(e1 <= 1e-12 && e2 <= 1e-12, fmt("n=%g: rel errors %.3e, %.3e", N, e1, e2));
    }
    if (o.pass) o.detail = fmt("max rel error %.3e over n=2..6", worst);
    return o;
}

Outcome perron_agreement() {
    Outcome o;
    double worst = 0.0;
    for (unsigned n = 2; n <= 5; ++n) {
        const CoefficientTable t = compute_coefficients(airy_family(n, 10), 0, 10);
        const PerronTable p = perron_coeff(n, 10);
        for (unsigned m = 1; m <= 10; ++m) {
            const double e = rel(t.A[m].coefficient(m), p.a[m]);
            worst = std::max(worst, e);
            o.require(e <= 1e-9, fmt("n=%g m=%g: rel error %.3e", n, m, e));
        }
    }
    if (o.pass) o.detail = fmt("max rel error %.3e for m<=10, n=2..5", worst);
    return o;
}

Outcome end_to_end_resummation() {
    Outcome o;
    double worst = 0.0;
    for (double u : {5.0, 10.0}) {
        const CompareReport rep = compare(3, u, SheetPoint{3.0, pi}, {"borel_pade", "factorial"});
        o.require(rep.oracle_error.empty(), "oracle failed: " + rep.oracle_error);
        for (const auto& row : rep.rows) {
            o.require(row.error.empty(), row.method + " failed: " + row.error);
            worst = std::max(worst, row.rel_deviation);
            o.require(row.rel_deviation <= 1e-6, row.method + fmt(" at u=%g: deviation %.3e", u, row.rel_deviation));
        }
    }
    const double dhat = airy_boundary_clearance(3, 0, 0.0, SheetPoint{3.0, pi});
    o.require(default_omega(3, 0, -3.0) > omega_threshold(3, dhat), "default omega not above threshold");
    if (o.pass) o.detail = fmt("max deviation from oracle %.3e", worst);
    return o;
}

Outcome borel_radius() {
    Outcome o;
    std::string summary;
    for (unsigned n : {2u, 3u, 4u}) {
        const CoefficientTable t = compute_coefficients(airy_family(n, 40), 0, 40);
        const GevreyReport g = gevrey_diagnostics(t, Complex(-3.0), 1.0);
        const double target = 2 * std::sin(pi / n) * 3.0;
        const double e = std::abs(g.radius_estimate - target) / target;
        o.require(e <= 0.1, fmt("n=%g: estimate %.5g vs %.5g", n, g.radius_estimate, target));
        summary += fmt("n=%g %.4g/%.4g ", n, g.radius_estimate, target);
    }
    if (o.pass) o.detail = summary + "(estimate/predicted)";
    return o;
}

Outcome frak_a_suite() {
    Outcome o;
    const double a = limit_constant();
    o.require(std::abs(a - 1.2564312086) <= 1e-9, fmt("limit constant %.12f", a));
    o.require(std::abs(frak_a(2).value - 2.0) <= 1e-14, "frak_a(2) != 2");
    double worst = 0.0;
    for (unsigned n = 2; n <= 10000; ++n) {
        const FrakAEntry e = frak_a(n);
        worst = std::max(worst, e.residual);
        o.require(e.residual <= 1e-12, fmt("n=%g residual %.3e", n, e.residual));
        o.require(e.value >= a / n && e.value <= 2.0 / (n - 1.0), fmt("n=%g bounds violated", n));
        if (n >= 10) o.require(std::abs(n * e.value - a) <= 3.0 / n, fmt("n=%g limit gap", n));
    }
    if (o.pass) o.detail = fmt("max residual %.3e for 2<=n<=10^4", worst);
    return o;
}

Outcome geometry_suite() {
    Outcome o;
    o.require(std::abs(theta_jl(3, 0, 1) - 7 * pi / 6) <= 1e-14, "theta_{0,1}");
    o.require(std::abs(theta_jl(3, 0, 2) - 5 * pi / 6) <= 1e-14, "theta_{0,2}");
    o.require(std::abs(theta_j(3, 0) - pi) <= 1e-14, "theta_0");
    for (unsigned n = 2; n <= 12; ++n) {
        for (unsigned j = 0; j < n; ++j) {
            const auto [lo, hi] = theta_range(n, j);
            o.require(std::abs(hi - lo - (n - 2.0) * pi / n) <= 1e-12, fmt("spread at n=%g j=%g", n, j));
            for (unsigned l = 0; l < n; ++l) {
                if (l != j) o.require(std::abs(theta_j(n, j) - theta_jl(n, j, l)) < pi / 2, "midpoint gap");
            }
        }
    }
    if (o.pass) o.detail = "angles, spreads and midpoints for n<=12";
    return o;
}

Outcome combinatorics_suite() {
    Outcome o;
    auto fact = [](long k) { return factorial(static_cast<unsigned>(k)); };
    for (long al = 0; al <= 8; ++al)
        for (long be = 0; be <= 8; ++be)
            for (long ga = 0; ga <= be; ++ga) {
                BigInt lhs = 0;
                for (long q = 0; q <= al; ++q)
                    lhs += binomial(static_cast<unsigned>(al), static_cast<unsigned>(q)) * fact(ga + q) *
                           fact(al + be - ga - q);
                const BigRational rhs(fact(al + be + 1),
                                      BigInt(be + 1) * binomial(static_cast<unsigned>(be), static_cast<unsigned>(ga)));
                o.require(BigRational(lhs) == rhs, "sum identity");
            }
    for (long a = 1; a <= 30; ++a) {
        BigInt s3 = 0, s4 = 0;
        for (long q = 0; q <= a - 1; ++q) s3 += fact(a - q) * fact(q + 1);
        for (long q = 1; q <= a; ++q) s4 += fact(a - q) * fact(q);
        o.require(s3 <= 4 * fact(a) && s4 <= 2 * fact(a), "sum inequalities");
        for (long b = 1; b <= 30; ++b) {
            o.require(fact(a) * fact(b) <= fact(a + b - 1), "product inequality");
            o.require(fact(a) * fact(b) <= fact(a + b), "weak product inequality");
            if (b < 2) continue;
            BigRational s5 = 0, s6 = 0;
            for (long q = 0; q <= a - 1; ++q) s5 += BigRational(fact(a - q) * fact(q + b), BigInt(q + 1));
            for (long q = 1; q <= a; ++q) s6 += BigRational(fact(a - q) * fact(q + b), BigInt(q + 1));
            o.require(s5 <= BigRational(2 * fact(a + b), BigInt(a + 1)), "weighted sum inequality (2)");
            o.require(s6 <= BigRational(3 * fact(a + b), BigInt(a + 1)), "weighted sum inequality (3)");
        }
    }

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    auto rc = [&] { return Complex(ud(rng), ud(rng)); };
    const Complex al = rc();
    const Complex be = rc() + 0.5;
    std::vector<Complex> x(10), y(10);
    Complex bp = 1.0;
    for (std::size_t i = 0; i < 10; ++i) {
        x[i] = rc();
        bp *= be;
        y[i] = al * bp * x[i];
    }
    const auto tx = partial_bell_triangle<Complex>(10, x, 1.0);
    const auto ty = partial_bell_triangle<Complex>(10, y, 1.0);
    for (std::size_t p = 1; p <= 10; ++p)
        for (std::size_t r = 1; r <= p; ++r) {
            const Complex e = std::pow(al, static_cast<int>(r)) * std::pow(be, static_cast<int>(p)) * tx[p][r];
            o.require(std::abs(ty[p][r] - e) <= 1e-12 * std::abs(e), "homogeneity");
        }

    std::vector<Complex> c(11), d(10);
    for (auto& v : c) v = 0.6 * rc();
    const auto ex = series::exp(c, 11);
    double kf = 1.0;
    for (std::size_t k = 1; k <= 10; ++k) {
        kf *= static_cast<double>(k);
        d[k - 1] = kf * c[k];
    }
    const auto B = complete_bell_sequence<Complex>(10, d, 1.0);
    double pf = 1.0;
    for (std::size_t p = 0; p <= 10; ++p) {
        if (p > 0) pf *= static_cast<double>(p);
        const Complex e = std::exp(c[0]) * B[p] / pf;
        o.require(std::abs(ex[p] - e) <= 1e-10 * std::abs(e), "chain rule");
    }

    // Derivative identity with polynomial arguments: x_q(z) = sum_i c_{q,i} z^i
    // stored as rational coefficient vectors; the triangle runs over them via
    // the LaurentSeries-free algebra below.
    struct Poly {
        std::vector<BigRational> c;
        Poly() = default;
        explicit Poly(int k) : c{BigRational(k)} {}
        Poly operator+(const Poly& b) const {
            Poly r;
            r.c.assign(std::max(c.size(), b.c.size()), BigRational(0));
            for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
            for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
            return r;
        }
        Poly operator*(const Poly& b) const {
            Poly r;
            if (c.empty() || b.c.empty()) return r;
            r.c.assign(c.size() + b.c.size() - 1, BigRational(0));
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t k = 0; k < b.c.size(); ++k) r.c[i + k] += c[i] * b.c[k];
            return r;
        }
        Poly operator*(std::int64_t k) const {
            Poly r = *this;
            for (auto& v : r.c) v *= k;
            return r;
        }
        [[nodiscard]] Poly der() const {
            Poly r;
            for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * static_cast<long>(i));
            return r;
        }
        [[nodiscard]] bool same(const Poly& b) const {
            for (std::size_t i = 0; i < std::max(c.size(), b.c.size()); ++i) {
                const BigRational u = i < c.size() ? c[i] : BigRational(0);
                const BigRational v = i < b.c.size() ? b.c[i] : BigRational(0);
                if (u != v) return false;
            }
            return true;
        }
    };
    std::uniform_int_distribution<int> ui(-4, 4);
    std::vector<Poly> xp(6);
    for (auto& p : xp)
        for (int i = 0; i <= 3; ++i) p.c.emplace_back(ui(rng));
    const auto tp = partial_bell_triangle<Poly>(6, xp, Poly(1));
    for (std::size_t p = 1; p <= 6; ++p)
        for (std::size_t r = 1; r <= p; ++r) {
            Poly rhs;
            for (std::size_t q = 1; q <= p - r + 1; ++q)
                rhs = rhs + (xp[q - 1].der() * tp[p - q][r - 1]) *
                                detail::small_binomial(static_cast<unsigned>(p), static_cast<unsigned>(q));
            o.require(tp[p][r].der().same(rhs), "derivative identity");
        }

    const auto S = stirling_first_table(15);
    for (unsigned m = 0; m <= 15; ++m) {
        BigInt sum = 0;
        for (const auto& v : S[m]) sum += v;
        o.require(sum == factorial(m), "Stirling row sum");
    }
    if (o.pass) o.detail = "identities, inequalities, Bell relations and Stirling sums";
    return o;
}

Outcome oracle_consistency() {
    Outcome o;
    double worst = 0.0;
    for (unsigned n = 2; n <= 4; ++n) {
        for (double r : {0.5, 1.5, 3.0, 6.0, 10.0}) {
            for (double a : {3 * pi / 4, -2.0}) {
                const Complex x = std::polar(r * (1.0 + 0.1 * n), a);
                const Complex y = y_derivative_quadrature(n, x, 0);
                const double e = std::abs(-y_derivative_quadrature(n, x, n) + x * y) / std::abs(x * y);
                worst = std::max(worst, e);
                o.require(e <= 1e-8, fmt("n=%g |x|=%g residual %.3e", n, std::abs(x), e));
            }
        }
    }
    const unsigned n = 3;
    const double az = 3 * pi / 4;
    const Complex traced = saddle_integral(n, 8.0, az, 0);
    const std::vector<Complex> poly{std::polar(3.0, detail::valley_angle(n, az, 1)), Complex(0.9, 0.4), Complex(1.0, 0.0),
                                    Complex(1.2, -0.3), std::polar(3.0, detail::valley_angle(n, az, 0))};
    const double ci = rel(saddle_integral_along(n, std::polar(8.0, az), 0, poly), traced);
    o.require(ci <= 1e-10, fmt("contour choices differ by %.3e", ci));
    if (o.pass) o.detail = fmt("max ODE residual %.3e; contour difference %.3e", worst, ci);
    return o;
}

Outcome laplace_kernel() {
    Outcome o;
    double worst = 0.0;
    for (Complex u : {Complex(2.0), Complex(5.0, 1.0)}) {
        for (int m = 0; m <= 10; ++m) {
            const double mf = std::tgamma(m + 1.0);
            auto F = [&](Complex t) { return std::pow(t, m) / mf; };
            double T = 0.0;
            const auto est = detail::laplace_along(F, u, 0.0, 1.0 / u.real(), 1e-16, T);
            const double e = rel(est.value, std::pow(u, -m - 1));
            worst = std::max(worst, e);
            o.require(e <= 1e-12, fmt("m=%g rel error %.3e", m, e));
        }
    }
    if (o.pass) o.detail = fmt("max rel error %.3e for m<=10, u in {2, 5+i}", worst);
    return o;
}

bool bit_equal(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.valid_to() != b.valid_to() || a.dense().size() != b.dense().size()) return false;
    return a.dense().empty() ||
           std::memcmp(a.dense().data(), b.dense().data(), a.dense().size() * sizeof(Complex)) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome persistence() {
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    PotentialSpec s;
    s.n = 4;
    for (unsigned k = 0; k <= 2; ++k) {
        std::vector<std::pair<std::size_t, Complex>> t;
        for (std::size_t e = 2; e <= 6; ++e) t.emplace_back(e, Complex(ud(rng) / 3.0, ud(rng) * 1e-7));
        s.set(k, k + 1, LaurentSeries::from_terms(t, 30));
    }
    for (const PotentialSpec& spec : {s, airy_family(5, 12)}) {
        const PotentialSpec back = io::potential_from_json(io::parse(io::to_json(spec).dump()));
        o.require(back.n == spec.n && back.max_order == spec.max_order && back.psi.size() == spec.psi.size(),
                  "spec header");
        for (const auto& [key, series] : spec.psi) {
            const LaurentSeries* b = back.find(key.first, key.second);
            o.require(b && bit_equal(*b, series), "spec entry");
        }
    }
    for (const CoefficientTable& t : {compute_coefficients(s, 1, 6), compute_coefficients(airy_family(3, 30), 2, 30)}) {
        const CoefficientTable back = io::table_from_json(io::parse(io::to_json(t).dump()));
        o.require(back.M == t.M && back.j == t.j && bit_equal(back.X, t.X), "table header");
        for (std::size_t m = 0; m < t.A.size(); ++m) o.require(bit_equal(back.A[m], t.A[m]), "table entry");
    }

    const std::string dir = BORELWKB_TEST_TMP;
    const std::string cli = BORELWKB_CLI;
    const std::vector<std::string> runs{
        "coeffs --family airy --n 3 --j 1 --orders 30",
        "resummation --n 3 --u 5 --xi 3@3.141592653589793 --method borel-pade",
        "compare --n 3 --u 10 --xi 3@3.141592653589793 --methods truncate,borel-pade,factorial",
        "stokes --n 4 --j 1 --d 0.3 --eps 0.1 --grid=-3,3,-3,3,30",
    };
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string out[2];
        for (int k = 0; k < 2; ++k) {
            const std::string path = dir + "/acceptance_run" + std::to_string(i) + "_" + std::to_string(k) + ".out";
            const int status = std::system(("'" + cli + "' " + runs[i] + " --out '" + path + "'").c_str());
            o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI failed: " + runs[i]);
            out[k] = slurp(path);
        }
        o.require(!out[0].empty() && out[0] == out[1], "CLI output differs between runs: " + runs[i]);
    }
    if (o.pass) o.detail = "JSON round trips bit-exact; repeated CLI runs byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"closed-form coefficients", closed_form_coefficients},
        {"independent derivation (Perron)", perron_agreement},
        {"end-to-end resummation vs oracle", end_to_end_resummation},
        {"Borel radius estimate", borel_radius},
        {"frak_a suite", frak_a_suite},
        {"geometry suite", geometry_suite},
        {"combinatorics suite", combinatorics_suite},
        {"oracle self-consistency", oracle_consistency},
        {"Laplace kernel", laplace_kernel},
        {"persistence and determinism", persistence},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    secs);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
