// borelwkb: command-line front end for coefficient tables, resummation,
// oracles and sector-domain grids.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "borelwkb/borelwkb.hpp"

namespace bw = borelwkb;
using bw::Complex;
using json = nlohmann::json;

namespace {

// %.17g, with ".0" appended to integral values so columns stay visibly real.
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

/// Complex literal: "re,im", "mod@arg" (radians) or a bare real.
struct ComplexArg {
    bw::SheetPoint sheet;
    Complex cartesian;
    bool polar = false;

    // Cartesian input is echoed exactly, not through its polar form.
    [[nodiscard]] Complex value() const { return polar ? sheet.value() : cartesian; }
};

double parse_real(const std::string& s, const std::string& whole) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw bw::ParseError("bad complex literal '" + whole + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw bw::ParseError("bad complex literal '" + whole + "'");
    return v;
}

ComplexArg parse_complex(const std::string& text) {
    const auto at = text.find('@');
    const auto comma = text.find(',');
    if (at != std::string::npos && comma != std::string::npos) {
        throw bw::ParseError("complex literal '" + text + "' mixes ',' and '@'");
    }
    ComplexArg c;
    if (at != std::string::npos) {
        c.polar = true;
        c.sheet = {parse_real(text.substr(0, at), text), parse_real(text.substr(at + 1), text)};
        if (c.sheet.modulus < 0.0) throw bw::ParseError("negative modulus in '" + text + "'");
        return c;
    }
    Complex z;
    if (comma != std::string::npos) {
        z = {parse_real(text.substr(0, comma), text), parse_real(text.substr(comma + 1), text)};
    } else {
        z = parse_real(text, text);
    }
    c.cartesian = z;
    c.sheet = bw::SheetPoint::from_complex(z);
    return c;
}

json cjson(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bw::ParseError("cannot write '" + path + "'");
    out << text;
}

unsigned thread_cap() {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BORELWKB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
    }
    return cap;
}

// Splice the JSON config's keys in as flags placed before the explicit
// arguments; with TakeLast policy the explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw bw::ParseError("--config needs a file");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!path) return rest;
    const json cfg = bw::io::read_file(*path);
    if (!cfg.is_object()) throw bw::ParseError("config must be a JSON object");

    std::vector<std::string> injected;
    std::string sub;
    for (const auto& [key, val] : cfg.items()) {
        if (key == "subcommand") {
            sub = val.get<std::string>();
            continue;
        }
        const std::string flag = "--" + key;
        if (val.is_boolean()) {
            if (val.get<bool>()) injected.push_back(flag);
        } else if (val.is_string()) {
            injected.push_back(flag);
            injected.push_back(val.get<std::string>());
        } else if (val.is_number_integer()) {
            injected.push_back(flag);
            injected.push_back(std::to_string(val.get<long long>()));
        } else if (val.is_number()) {
            injected.push_back(flag);
            injected.push_back(num(val.get<double>()));
        } else if (val.is_array()) {
            std::string joined;
            for (const auto& v : val) {
                if (!joined.empty()) joined += ',';
                joined += v.is_string() ? v.get<std::string>() : v.dump();
            }
            injected.push_back(flag);
            injected.push_back(joined);
        } else {
            throw bw::ParseError("config key '" + key + "' has unsupported type");
        }
    }
    // rest[0] is the program name; the subcommand, if given, is rest[1].
    std::vector<std::string> out{rest.empty() ? std::string("borelwkb") : rest[0]};
    std::size_t tail = 1;
    if (rest.size() > 1 && rest[1].rfind("-", 0) != 0) {
        out.push_back(rest[1]);
        tail = 2;
    } else if (!sub.empty()) {
        out.push_back(sub);
    }
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(tail), rest.end());
    return out;
}

struct Options {
    unsigned n_max = 10;
    std::string family = "airy";
    unsigned n = 3;
    unsigned j = 0;
    unsigned orders = 40;
    std::size_t budget = 0;
    std::string spec_path;
    std::string table_path;
    std::string out_path;
    std::string u = "10,0";
    std::string xi = "3@3.141592653589793";
    std::string method = "borel-pade";
    double omega = 0.0;
    unsigned pade = 0;
    unsigned truncation = 0;
    bool no_nudge = false;
    std::vector<std::string> methods{"truncate", "borel-pade", "factorial"};
    bool timing = false;
    double d = 1.0;
    double eps = 0.1;
    std::string grid;
};

int run_an_table(const Options& o) {
    if (o.n_max < 2) throw bw::DomainError("an-table: --n-max must be >= 2");
    std::ostringstream out;
    out << "n,frak_a,lower_bound,upper_bound,residual\n";
    const double a = bw::limit_constant();
    for (unsigned n = 2; n <= o.n_max; ++n) {
        const auto e = bw::frak_a(n);
        out << n << ',' << num(e.value) << ',' << num(a / n) << ',' << num(2.0 / (n - 1.0)) << ',' << num(e.residual)
            << '\n';
    }
    write_text(o.out_path, out.str());
    return 0;
}

bw::PotentialSpec load_spec(const Options& o) {
    if (!o.spec_path.empty()) return bw::io::potential_from_json(bw::io::read_file(o.spec_path));
    return bw::airy_family(o.n, o.orders);
}

bw::CoefficientTable build_table(const Options& o) {
    const bw::PotentialSpec spec = load_spec(o);
    const auto report = bw::validate(spec);
    if (!report.ok()) throw bw::DomainError("potential spec: " + report.failures.front());
    bw::CoefficientTable t = o.budget ? bw::compute_coefficients(spec, o.j, o.orders, o.budget)
                                      : bw::compute_coefficients(spec, o.j, o.orders);
    t.spec_hash = bw::io::spec_hash(spec);
    return t;
}

int run_coeffs(const Options& o) {
    write_text(o.out_path, bw::io::to_json(build_table(o)).dump() + "\n");
    return 0;
}

int run_perron(const Options& o) {
    const auto t = bw::perron_coeff(o.n, o.orders);
    std::ostringstream out;
    out << "n,m,a_m\n";
    for (std::size_t m = 0; m < t.a.size(); ++m) out << o.n << ',' << m << ',' << num(t.a[m]) << '\n';
    write_text(o.out_path, out.str());
    return 0;
}

bw::MethodOptions method_options(const Options& o) {
    bw::MethodOptions m;
    m.orders = o.orders;
    m.pade_order = o.pade;
    m.truncation = o.truncation;
    m.omega = o.omega;
    m.quad.nudge = !o.no_nudge;
    return m;
}

int run_resummation(const Options& o, bool n_given) {
    const ComplexArg u = parse_complex(o.u);
    const ComplexArg xi = parse_complex(o.xi);
    bw::CoefficientTable table;
    if (!o.table_path.empty()) {
        table = bw::io::table_from_json(bw::io::read_file(o.table_path));
        if (n_given && table.n != o.n) {
            throw bw::DomainError("--n " + std::to_string(o.n) + " disagrees with table n = " + std::to_string(table.n));
        }
    } else {
        table = build_table(o);
    }
    if (xi.sheet.modulus == 0.0) throw bw::ZeroPointError("resummation: xi = 0");
    if (!bw::airy_domain_contains(bw::DomainSpec{table.n, table.j, 1e-9, 1e-9}, xi.value())) {
        throw bw::SectorViolation("resummation: xi outside the sector domain of sheet " + std::to_string(table.j));
    }
    const Complex x = xi.value();
    const bw::MethodOptions mo = method_options(o);
    const bw::SummationResult r = bw::resum(table, u.value(), x, o.method, mo);
    const bw::AssembledW W = bw::assemble_W(table, u.value(), x, r.value);

    json out = {{"method", o.method == "borel_pade" ? "borel-pade" : o.method},
                {"value", cjson(1.0 + r.value)},
                {"eta", cjson(r.value)},
                {"error_estimate", r.error_estimate},
                {"converged", r.converged},
                {"n", table.n},
                {"j", table.j},
                {"orders", table.M},
                {"u", cjson(u.value())},
                {"xi", cjson(x)},
                {"omega", nullptr},
                {"W", cjson(W.value)},
                {"log_W", cjson(W.log_value)},
                {"overflow", W.overflow},
                {"diagnostics", r.diagnostics}};
    if (o.method == "factorial") out["omega"] = mo.omega > 0.0 ? mo.omega : bw::default_omega(table.n, table.j, x);
    write_text(o.out_path, out.dump() + "\n");
    return r.converged ? 0 : 4;
}

int run_oracle(const Options& o) {
    const ComplexArg u = parse_complex(o.u);
    const ComplexArg xi = parse_complex(o.xi);
    const Complex s = bw::W0_scaled(o.n, u.value(), xi.sheet);
    const Complex zeta = u.value() * xi.value();
    json out = {{"method", "oracle"},
                {"n", o.n},
                {"u", cjson(u.value())},
                {"xi", cjson(xi.value())},
                {"scaled", cjson(s)},
                {"W0", cjson(s * std::exp(zeta))},
                {"log_W0", cjson(std::log(s) + zeta)}};
    write_text(o.out_path, out.dump() + "\n");
    return 0;
}

int run_compare(const Options& o) {
    const ComplexArg u = parse_complex(o.u);
    const ComplexArg xi = parse_complex(o.xi);
    const auto rep = bw::compare(o.n, u.value(), xi.sheet, o.methods, method_options(o));
    std::ostringstream out;
    json head = {{"method", "oracle"}, {"n", o.n}, {"u", cjson(u.value())}, {"xi", cjson(xi.value())}};
    if (rep.oracle_error.empty()) {
        head["scaled"] = cjson(rep.oracle_scaled);
    } else {
        head["error"] = rep.oracle_error;
    }
    out << head.dump() << '\n';
    for (const auto& row : rep.rows) {
        json r = {{"method", row.method}};
        if (row.error.empty()) {
            r["scaled"] = cjson(row.scaled);
            r["rel_deviation"] = row.rel_deviation;
            r["error_estimate"] = row.error_estimate;
        } else {
            r["error"] = row.error;
        }
        if (o.timing) r["wall_time"] = row.wall_time;
        out << r.dump() << '\n';
    }
    write_text(o.out_path, out.str());
    return 0;
}

int run_stokes(const Options& o) {
    std::vector<double> g;
    {
        std::stringstream ss(o.grid);
        std::string item;
        while (std::getline(ss, item, ',')) g.push_back(parse_real(item, o.grid));
    }
    if (g.size() != 5) throw bw::ParseError("--grid expects RE0,RE1,IM0,IM1,STEPS");
    const double steps_d = g[4];
    if (steps_d < 1.0 || steps_d != std::floor(steps_d) || steps_d > 1e4) {
        throw bw::ParseError("--grid STEPS must be an integer in [1, 10000]");
    }
    const auto steps = static_cast<std::size_t>(steps_d);
    const bw::DomainSpec spec{o.n, o.j, o.d, o.eps};
    spec.validate();

    // STEPS intervals per axis, endpoints included; row-major in imaginary part.
    const std::size_t side = steps + 1;
    auto coord = [&](double lo, double hi, std::size_t i) { return lo + (hi - lo) * static_cast<double>(i) / steps; };
    std::vector<int> inside(side * side, 0);
    const unsigned workers = std::min<unsigned>(thread_cap(), static_cast<unsigned>(side));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t row = w; row < side; row += workers) {
                const double im = coord(g[2], g[3], row);
                for (std::size_t col = 0; col < side; ++col) {
                    const Complex z{coord(g[0], g[1], col), im};
                    inside[row * side + col] = z == Complex{} ? 0 : bw::airy_domain_contains(spec, z);
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    std::ostringstream out;
    out << "re,im,inside\n";
    for (std::size_t row = 0; row < side; ++row) {
        for (std::size_t col = 0; col < side; ++col) {
            out << num(coord(g[0], g[1], col)) << ',' << num(coord(g[2], g[3], row)) << ',' << inside[row * side + col]
                << '\n';
        }
    }
    write_text(o.out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Borel resummation of WKB-type formal solutions", "borelwkb"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out_path, "Output file (default stdout)"); };

    auto* an = app.add_subcommand("an-table", "Table of frak_a(n) with its bounds");
    an->add_option("--n-max", o.n_max, "Largest n")->required();
    add_out(an);

    auto* co = app.add_subcommand("coeffs", "Coefficient table A_{j,m} as JSON");
    co->add_option("--family", o.family, "Potential family")->check(CLI::IsMember({"airy"}));
    auto* co_n = co->add_option("--n", o.n, "Order of the equation")->check(CLI::Range(2u, 64u));
    co->add_option("--j", o.j, "Sheet index");
    co->add_option("--orders", o.orders, "Number of coefficients M");
    co->add_option("--spec", o.spec_path, "PotentialSpec JSON instead of the family");
    co->add_option("--budget", o.budget, "Internal truncation budget");
    add_out(co);
    co->callback([&] {
        if (o.spec_path.empty() && co_n->count() == 0) throw CLI::RequiredError("--n");
    });

    auto* pe = app.add_subcommand("perron", "Saddle-point coefficients a_m as CSV");
    pe->add_option("--n", o.n, "Order of the equation")->required()->check(CLI::Range(2u, 64u));
    pe->add_option("--orders", o.orders, "Number of coefficients M")->required();
    add_out(pe);

    auto* rs = app.add_subcommand("resummation", "Resummed eta_j(u, xi) as JSON");
    auto* rs_n = rs->add_option("--n", o.n, "Order of the equation")->check(CLI::Range(2u, 64u));
    rs->add_option("--j", o.j, "Sheet index");
    rs->add_option("--u", o.u, "Complex literal re,im or mod@arg")->required();
    rs->add_option("--xi", o.xi, "Complex literal re,im or mod@arg")->required();
    rs->add_option("--method", o.method, "Summation method")
        ->required()
        ->check(CLI::IsMember({"truncate", "borel-pade", "borel_pade", "factorial"}));
    rs->add_option("--orders", o.orders, "Number of coefficients M");
    rs->add_option("--omega", o.omega, "Factorial-series parameter (default: just above threshold)");
    rs->add_option("--pade", o.pade, "Pade order (default: largest available)");
    rs->add_option("--truncation", o.truncation, "Truncation order (default: optimal)");
    rs->add_flag("--no-nudge", o.no_nudge, "Keep the Laplace path on the real axis");
    rs->add_option("--table", o.table_path, "Coefficient table JSON from 'coeffs'");
    rs->add_option("--spec", o.spec_path, "PotentialSpec JSON instead of the airy family");
    rs->add_option("--budget", o.budget, "Internal truncation budget");
    add_out(rs);
    rs->callback([&] {
        if (o.table_path.empty() && o.spec_path.empty() && rs_n->count() == 0) throw CLI::RequiredError("--n");
    });

    auto* orc = app.add_subcommand("oracle", "Quadrature value of W_0(u, xi) as JSON");
    orc->add_option("--n", o.n, "Order of the equation")->required()->check(CLI::Range(2u, 64u));
    orc->add_option("--u", o.u, "Complex literal re,im or mod@arg")->required();
    orc->add_option("--xi", o.xi, "Complex literal re,im or mod@arg")->required();
    add_out(orc);

    auto* cmp = app.add_subcommand("compare", "Resummation methods against the oracle, JSON lines");
    cmp->add_option("--n", o.n, "Order of the equation")->required()->check(CLI::Range(2u, 64u));
    cmp->add_option("--u", o.u, "Complex literal re,im or mod@arg")->required();
    cmp->add_option("--xi", o.xi, "Complex literal re,im or mod@arg")->required();
    cmp->add_option("--methods", o.methods, "Comma-separated summation methods")->delimiter(',')->check(
        CLI::IsMember({"truncate", "borel-pade", "borel_pade", "factorial"}));
    cmp->add_option("--orders", o.orders, "Number of coefficients M");
    cmp->add_option("--omega", o.omega, "Factorial-series parameter (default: just above threshold)");
    cmp->add_option("--pade", o.pade, "Pade order (default: largest available)");
    cmp->add_flag("--timing", o.timing, "Include wall times (output no longer deterministic)");
    add_out(cmp);

    auto* st = app.add_subcommand("stokes", "Sector-domain membership on a grid as CSV");
    st->add_option("--n", o.n, "Order of the equation")->required()->check(CLI::Range(2u, 64u));
    st->add_option("--j", o.j, "Sheet index");
    st->add_option("--d", o.d, "Distance from the sector boundary")->required();
    st->add_option("--eps", o.eps, "Extra margin on top of d")->required();
    st->add_option("--grid", o.grid, "RE0,RE1,IM0,IM1,STEPS")->required();
    add_out(st);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(std::move(args));
        // CLI11 consumes arguments in reverse order.
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const bw::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*an) return run_an_table(o);
        if (*co) return run_coeffs(o);
        if (*pe) return run_perron(o);
        if (*rs) return run_resummation(o, rs_n->count() > 0);
        if (*orc) return run_oracle(o);
        if (*cmp) return run_compare(o);
        if (*st) return run_stokes(o);
    } catch (const bw::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const bw::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const bw::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
