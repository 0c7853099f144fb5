#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "borelwkb/errors.hpp"
#include "borelwkb/laurent.hpp"
#include "borelwkb/potential.hpp"
#include "borelwkb/wkb.hpp"

namespace borelwkb::io {

using json = nlohmann::json;

// Doubles are written by nlohmann's shortest round-trip formatter, so
// serialise -> parse reproduces every coefficient bit for bit.

inline json to_json(const LaurentSeries& s) {
    json terms = json::array();
    const auto& c = s.dense();
    for (std::size_t e = 0; e < c.size(); ++e) {
        // Signed zeros are kept so decoding reproduces the stored bits.
        const bool plus_zero = c[e] == Complex{} && !std::signbit(c[e].real()) && !std::signbit(c[e].imag());
        if (!plus_zero) terms.push_back({{"exp", e}, {"re", c[e].real()}, {"im", c[e].imag()}});
    }
    return {{"valid_to", s.valid_to()}, {"terms", terms}};
}

namespace detail {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace detail

inline LaurentSeries laurent_from_json(const json& j) {
    const auto vt = detail::field<long long>(j, "valid_to");
    if (vt < 0) throw ParseError("valid_to must be non-negative");
    const json arr = detail::field<json>(j, "terms");
    if (!arr.is_array()) throw ParseError("'terms' must be an array");
    std::vector<Complex> dense;
    std::vector<bool> seen;
    for (const auto& t : arr) {
        const auto e = detail::field<long long>(t, "exp");
        if (e < 0) throw DomainError("Laurent term with positive power xi^" + std::to_string(-e) + " rejected");
        if (e > vt) {
            throw DomainError("Laurent term xi^-" + std::to_string(e) + " lies beyond valid_to = " + std::to_string(vt));
        }
        const auto s = static_cast<std::size_t>(e);
        if (dense.size() <= s) {
            dense.resize(s + 1, Complex{});
            seen.resize(s + 1, false);
        }
        const Complex c(detail::field<double>(t, "re"), detail::field<double>(t, "im"));
        // Assign rather than add: 0.0 + (-0.0) would lose the sign.
        dense[s] = seen[s] ? dense[s] + c : c;
        seen[s] = true;
    }
    return LaurentSeries(std::move(dense), static_cast<std::size_t>(vt));
}

inline json to_json(const PotentialSpec& spec) {
    json psi = json::array();
    for (const auto& [key, series] : spec.psi) psi.push_back({{"k", key.first}, {"m", key.second}, {"series", to_json(series)}});
    return {{"n", spec.n}, {"rho", spec.rho}, {"max_order", spec.max_order}, {"psi", psi}};
}

inline PotentialSpec potential_from_json(const json& j) {
    PotentialSpec spec;
    spec.n = detail::field<unsigned>(j, "n");
    if (spec.n < 2) throw DomainError("PotentialSpec: n must be >= 2");
    if (j.contains("rho")) spec.rho = detail::field<double>(j, "rho");
    const json arr = j.contains("psi") ? detail::field<json>(j, "psi") : json::array();
    if (!arr.is_array()) throw ParseError("'psi' must be an array");
    for (const auto& e : arr) {
        spec.set(detail::field<unsigned>(e, "k"), detail::field<unsigned>(e, "m"), laurent_from_json(detail::field<json>(e, "series")));
    }
    if (j.contains("max_order")) spec.max_order = detail::field<unsigned>(j, "max_order");
    return spec;
}

/// 64-bit FNV-1a of a string, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string spec_hash(const PotentialSpec& spec) { return fnv1a_hex(to_json(spec).dump()); }

inline json to_json(const CoefficientTable& t) {
    json A = json::array();
    for (const auto& a : t.A) A.push_back(to_json(a));
    return {{"j", t.j},
            {"n", t.n},
            {"M", t.M},
            {"X", to_json(t.X)},
            {"A", A},
            {"meta", {{"spec_hash", t.spec_hash}, {"budget", t.budget}}}};
}

inline CoefficientTable table_from_json(const json& j) {
    CoefficientTable t;
    t.j = detail::field<unsigned>(j, "j");
    t.n = detail::field<unsigned>(j, "n");
    t.M = detail::field<unsigned>(j, "M");
    t.X = laurent_from_json(detail::field<json>(j, "X"));
    const json arr = detail::field<json>(j, "A");
    if (!arr.is_array()) throw ParseError("'A' must be an array");
    for (const auto& a : arr) t.A.push_back(laurent_from_json(a));
    if (t.A.size() != static_cast<std::size_t>(t.M) + 1) {
        throw ParseError("coefficient table lists " + std::to_string(t.A.size()) + " entries for M = " +
                         std::to_string(t.M));
    }
    if (j.contains("meta")) {
        const json& meta = j.at("meta");
        if (meta.contains("spec_hash")) t.spec_hash = detail::field<std::string>(meta, "spec_hash");
        if (meta.contains("budget")) t.budget = detail::field<std::size_t>(meta, "budget");
    }
    return t;
}

inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace borelwkb::io
