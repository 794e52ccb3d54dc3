#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "correspondence.hpp"
#include "suslin.hpp"

namespace suslin {

using nlohmann::json;

inline json to_json(const Place& P) {
    if (P.is_infinity()) return {{"infinity", true}};
    return {{"poly", P.poly().to_string()}};
}

inline json to_json(const Divisor& D) {
    json places = json::array();
    for (const auto& [P, m] : D.terms()) {
        json r = to_json(P);
        r["mult"] = m;
        places.push_back(std::move(r));
    }
    return {{"places", std::move(places)}};
}

inline json to_json(const ModulusContext& ctx) {
    json mod = json::array(), extra = json::array();
    for (const auto& [p, n] : ctx.factors()) mod.push_back({p.to_string(), n});
    for (const auto& v : ctx.extra_valuations()) extra.push_back(v.is_infinity() ? "inf" : v.poly().to_string());
    return {{"p", ctx.field().characteristic()}, {"modulus", std::move(mod)}, {"extra_valuations", std::move(extra)},
            {"degree_bound", ctx.degree_bound()}, {"seed", ctx.seed()}};
}

inline json to_json(const QFraction& q) {
    return {{"num", canonical(q.num).to_string()}, {"den", canonical(q.den).to_string()}, {"n", q.level()}};
}

inline json to_json(const ChainElement& c) {
    json j{{"vertical", to_json(c.vertical)}, {"level", c.level()}};
    j["dominant"] = c.dominant.is_one() ? json(nullptr) : to_json(c.dominant);
    return j;
}

inline json to_json(const Correspondence& c) {
    json cycles = json::array();
    for (const auto& [F, m] : c.terms()) cycles.push_back({{"poly", F.to_string()}, {"coeff", m}});
    return {{"source", to_json(c.source())}, {"target", to_json(c.target())}, {"cycles", std::move(cycles)}};
}

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline Place place_from_json(const json& j, const PrimeField& k) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity") return Place::infinity();
        return Place::checked(parse_unipoly(s, k));
    }
    if (get_or(j, "infinity", false)) return Place::infinity();
    if (!j.contains("poly")) throw usage_error("place record needs \"poly\" or \"infinity\"");
    return Place::checked(parse_unipoly(j.at("poly").get<std::string>(), k));
}

}  // namespace detail

/// {"p": 3, "modulus": [["x", 2]], "extra_valuations": [], "degree_bound": 4, "seed": 0}
inline ModulusContext context_from_json(const json& j) {
    try {
        const PrimeField k(j.at("p").get<std::uint32_t>());
        std::vector<std::pair<UniPoly, int>> factors;
        for (const auto& f : j.at("modulus")) {
            if (!f.is_array() || f.size() != 2) throw usage_error("modulus entries are [\"<poly>\", multiplicity]");
            factors.emplace_back(parse_unipoly(f[0].get<std::string>(), k), f[1].get<int>());
        }
        std::vector<Place> extra;
        for (const auto& v : detail::get_or(j, "extra_valuations", json::array())) extra.push_back(detail::place_from_json(v, k));
        return ModulusContext(k, std::move(factors), std::move(extra), detail::get_or(j, "degree_bound", 4),
                              detail::get_or<std::uint64_t>(j, "seed", 0));
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed context: ") + e.what());
    }
}

/// {"places": [{"poly": "<text>", "mult": m}, {"infinity": true, "mult": m}]}
inline Divisor divisor_from_json(const json& j, const PrimeField& k) {
    try {
        Divisor d;
        for (const auto& r : j.at("places")) d.add(detail::place_from_json(r, k), detail::get_or(r, "mult", 1));
        return d;
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed divisor: ") + e.what());
    }
}

/// {"source": ctx, "target": ctx, "cycles": [{"poly": "<text in x, y>", "coeff": n}]}
inline Correspondence correspondence_from_json(const json& j) {
    try {
        Correspondence c(context_from_json(j.at("source")), context_from_json(j.at("target")));
        for (const auto& r : j.at("cycles")) {
            const MPoly F = parse_mpoly(r.at("poly").get<std::string>(), c.source().field(), Correspondence::kVars);
            c.add(F, detail::get_or(r, "coeff", 1));
        }
        return c;
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed correspondence: ") + e.what());
    }
}

inline RatFunc parse_ratfunc(std::string_view text, const PrimeField& k) {
    const auto f = parse_fraction(text, k, {"x"});
    return RatFunc(f.num.to_uni(0), f.den.to_uni(0));
}

/// Number of cube variables in a text: "t" means one, otherwise the largest index among t1, t2, ...
inline std::size_t cube_arity(std::string_view text) {
    std::size_t n = 0;
    bool bare = false;
    for (const auto& v : variables_in(text)) {
        if (v == "x") continue;
        if (v == "t") {
            bare = true;
            continue;
        }
        if (v.size() < 2 || v[0] != 't' || v.find_first_not_of("0123456789", 1) != std::string::npos || v[1] == '0')
            throw usage_error("unknown variable " + v + " (expected x, t or t1, t2, ...)");
        n = std::max<std::size_t>(n, std::stoul(v.substr(1)));
    }
    if (bare && n > 1) throw usage_error("mixing t with indexed cube variables");
    return bare ? 1 : n;
}

/// Parse a cube polynomial; with one variable, t1 is accepted for t.
inline TPoly parse_cube(std::string text, const PrimeField& k, std::optional<std::size_t> n = std::nullopt) {
    const std::size_t arity = std::max<std::size_t>(cube_arity(text), 1);
    const std::size_t m = n.value_or(arity);
    if (m < arity) throw usage_error("polynomial involves more than " + std::to_string(m) + " cube variables");
    if (m == 1)
        for (std::size_t pos; (pos = text.find("t1")) != std::string::npos;) text.replace(pos, 2, "t");
    return parse_tpoly(text, k, m);
}

}  // namespace suslin
