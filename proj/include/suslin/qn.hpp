#pragma once

#include <string>
#include <vector>

#include "mfactor.hpp"
#include "modulus.hpp"
#include "tpoly.hpp"

namespace suslin {

/// Outcome of a Q_n membership test; `condition` is the first violated condition (1..4), 0 when ok.
struct QnReport {
    bool ok = true;
    int condition = 0;
    std::string message;
    explicit operator bool() const { return ok; }
};

namespace detail {

inline QnReport qn_fail(int c, std::string msg) { return {false, c, std::move(msg)}; }

/// v_{p_i}(a) for each modulus prime; a must be nonzero.
inline std::vector<int> modulus_valuations(const RatFunc& a, const ModulusContext& ctx) {
    std::vector<int> v;
    for (const auto& [p, n] : ctx.factors()) v.push_back(valuation(Place::finite(p), a));
    return v;
}

inline bool in_A(const RatFunc& a, const ModulusContext& ctx) {
    if (a.is_zero()) return true;
    for (int v : modulus_valuations(a, ctx))
        if (v < 0) return false;
    return true;
}
inline bool in_A(const TPoly& f, const ModulusContext& ctx) {
    for (const auto& [e, a] : f.terms())
        if (!in_A(a, ctx)) return false;
    return true;
}
inline bool is_unit_of_A(const RatFunc& a, const ModulusContext& ctx) {
    if (a.is_zero()) return false;
    for (int v : modulus_valuations(a, ctx))
        if (v != 0) return false;
    return true;
}

/// a lies in s^k A.
inline bool in_s_power(const RatFunc& a, int k, const ModulusContext& ctx) {
    if (a.is_zero()) return true;
    const auto v = modulus_valuations(a, ctx);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < k * ctx.factors()[i].second) return false;
    return true;
}

inline int max_gap(const Exponent& N, const Exponent& e) {
    int k = 0;
    for (std::size_t j = 0; j < N.size(); ++j) k = std::max(k, N[j] - e[j]);
    return k;
}

inline void require_over_A(const TPoly& f, const ModulusContext& ctx) {
    if (f.is_zero()) throw math_error("zero cube polynomial");
    if (!(f.field() == ctx.field())) throw usage_error("cube polynomial over the wrong field");
    for (const auto& [e, a] : f.terms())
        if (!in_A(a, ctx))
            throw math_error("coefficient " + a.to_string() + " has a denominator meeting the modulus");
}

}  // namespace detail

/// Conditions (1)-(3) only: the hypotheses under which rho is defined.
inline QnReport qn_conditions_123(const TPoly& f, const ModulusContext& ctx) {
    detail::require_over_A(f, ctx);
    const Exponent N = f.degrees();
    for (const auto& [e, a] : f.terms())
        if (!detail::in_s_power(a, detail::max_gap(N, e), ctx))
            return detail::qn_fail(1, "coefficient " + a.to_string() + " is not divisible by s^" +
                                          std::to_string(detail::max_gap(N, e)));
    const auto lc = f.leading_coefficient();
    if (!lc) return detail::qn_fail(2, "no leading coefficient");
    if (!detail::is_unit_of_A(*lc, ctx)) return detail::qn_fail(2, "leading coefficient " + lc->to_string() + " is not a unit");
    for (const auto& v : ctx.extra_valuations()) {
        const int g = f.gauss_valuation(v) - valuation(v, *lc);
        if (g != 0) return detail::qn_fail(3, "v_" + v.to_string() + "(f/a_N) = " + std::to_string(g));
    }
    return {};
}

inline QnReport is_in_Qn(const TPoly& f, const ModulusContext& ctx) {
    if (f.nvars() == 0) throw usage_error("Q_n needs at least one cube variable");
    if (auto r = qn_conditions_123(f, ctx); !r) return r;
    for (std::size_t j = 0; j < f.nvars(); ++j)
        if (f.specialize(j, 0).is_zero())
            return detail::qn_fail(4, "vanishes at " + f.var_names()[j] + " = 0");
    return {};
}

/// rho(f) and the exponents m with f = t^m rho(f).
inline std::pair<TPoly, Exponent> rho(const TPoly& f, const ModulusContext& ctx) {
    if (auto r = qn_conditions_123(f, ctx); !r) throw math_error("rho: condition (" + std::to_string(r.condition) + ") fails: " + r.message);
    Exponent m;
    TPoly g = f.strip_monomial(&m);
    if (auto r = is_in_Qn(g, ctx); !r) throw math_error("rho: stripped polynomial not in Q_n: " + r.message);
    return {g, m};
}

/// f h = T^N + s T^{N-1} g_1 + ... + s^N g_N with T = t_1 ... t_n.
struct QnCertificate {
    int N = 0;
    TPoly h;
    std::vector<TPoly> g;  // g[k - 1] = g_k
};

/// The explicit cofactor a_N^{-1} t^{M - N}; the g_k collect the monomials with max_j(N_j - i_j) = k.
/// Returns nullopt when f has no leading coefficient.
inline std::optional<QnCertificate> constructive_certificate(const TPoly& f, const ModulusContext& ctx) {
    const auto lc = f.leading_coefficient();
    if (!lc) return std::nullopt;
    const auto& k = f.field();
    const std::size_t n = f.nvars();
    const Exponent N = f.degrees();
    const int M = n ? *std::max_element(N.begin(), N.end()) : 0;
    QnCertificate c;
    c.N = M;
    Exponent hm(n);
    for (std::size_t j = 0; j < n; ++j) hm[j] = M - N[j];
    c.h = TPoly::constant(k, n, lc->inverse()).shift(hm);
    c.g.assign(static_cast<std::size_t>(M), TPoly(k, n));
    const RatFunc s(ctx.s());
    for (const auto& [e, a] : f.terms()) {
        if (e == N) continue;
        const int gap = detail::max_gap(N, e);
        Exponent m(n);
        for (std::size_t j = 0; j < n; ++j) m[j] = gap - N[j] + e[j];
        c.g[static_cast<std::size_t>(gap - 1)].add_term(m, a / (*lc * s.pow(gap)));
    }
    return c;
}

/// The identity holds exactly and h, g_k have coefficients in A.
inline bool verify_certificate(const TPoly& f, const QnCertificate& c, const ModulusContext& ctx) {
    const auto& k = f.field();
    const std::size_t n = f.nvars();
    if (c.g.size() != static_cast<std::size_t>(c.N)) return false;
    if (!detail::in_A(c.h, ctx)) return false;
    const TPoly T = TPoly::constant(k, n, 1).shift(Exponent(n, 1));
    const TPoly s = TPoly::constant(k, n, RatFunc(ctx.s()));
    TPoly rhs = T.pow(static_cast<unsigned>(c.N));
    for (int i = 1; i <= c.N; ++i) {
        const auto& gi = c.g[static_cast<std::size_t>(i - 1)];
        if (!detail::in_A(gi, ctx)) return false;
        rhs += s.pow(static_cast<unsigned>(i)) * T.pow(static_cast<unsigned>(c.N - i)) * gi;
    }
    return f * c.h == rhs;
}

inline QnCertificate integrality_certificate(const TPoly& f, const ModulusContext& ctx) {
    if (auto r = is_in_Qn(f, ctx); !r) throw math_error("integrality_certificate: not in Q_n: " + r.message);
    auto c = constructive_certificate(f, ctx);
    if (!c || !verify_certificate(f, *c, ctx)) throw math_error("integrality_certificate: identity failed");
    return *c;
}

struct CharacterizationReport {
    bool definition = false;     // conditions (1) and (2) of the definition
    bool lemma_identity = false; // the cofactor identity with data over A
    bool lemma_leading = false;  // leading part in each t_j is nonzero modulo every modulus prime
    bool agree() const { return definition == (lemma_identity && lemma_leading); }
};

/// Leading part of f in t_j has a coefficient that is a unit at p_i, for all j and i.
inline bool leading_parts_nonvanishing(const TPoly& f, const ModulusContext& ctx) {
    for (std::size_t j = 0; j < f.nvars(); ++j) {
        const TPoly L = f.leading_in(j);
        for (const auto& [p, n] : ctx.factors()) {
            bool unit = false;
            for (const auto& [e, a] : L.terms())
                if (valuation(Place::finite(p), a) == 0) unit = true;
            if (!unit) return false;
        }
    }
    return true;
}

/// Cross-check of the two characterizations of conditions (1)+(2).
inline CharacterizationReport check_characterization(const TPoly& f, const ModulusContext& ctx) {
    CharacterizationReport r;
    if (f.is_zero() || !detail::in_A(f, ctx)) return r;
    const auto d = qn_conditions_123(f, ctx);
    r.definition = d.ok || d.condition == 3;
    if (auto c = constructive_certificate(f, ctx)) r.lemma_identity = verify_certificate(f, *c, ctx);
    r.lemma_leading = leading_parts_nonvanishing(f, ctx);
    return r;
}

/// Conditions (1)+(2) checked one cube variable at a time, after moving t_j into the coefficient ring
/// (localized at the modulus primes), using the minimum of the coefficient valuations over i_j.
inline bool localized_conditions_12(const TPoly& f, const ModulusContext& ctx) {
    detail::require_over_A(f, ctx);
    const std::size_t n = f.nvars();
    if (n < 2) {
        const auto d = qn_conditions_123(f, ctx);
        return d.ok || d.condition == 3;
    }
    const Exponent N = f.degrees();
    for (std::size_t j = 0; j < n; ++j) {
        // Group coefficients by the exponents of the other variables.
        std::map<Exponent, std::vector<int>> minv;  // other exponents -> min valuation per prime
        for (const auto& [e, a] : f.terms()) {
            Exponent o = e;
            o.erase(o.begin() + static_cast<long>(j));
            const auto v = detail::modulus_valuations(a, ctx);
            auto [it, inserted] = minv.emplace(o, v);
            if (!inserted)
                for (std::size_t i = 0; i < v.size(); ++i) it->second[i] = std::min(it->second[i], v[i]);
        }
        Exponent No = N;
        No.erase(No.begin() + static_cast<long>(j));
        for (const auto& [o, v] : minv) {
            const int gap = detail::max_gap(No, o);
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] < gap * ctx.factors()[i].second) return false;
        }
        auto it = minv.find(No);
        if (it == minv.end()) return false;
        for (int v : it->second)
            if (v != 0) return false;
    }
    return true;
}

struct Q1Factorization {
    RatFunc unit;
    std::vector<std::pair<TPoly, int>> factors;  // irreducible, leading coefficient 1

    TPoly product() const {
        TPoly r = TPoly::constant(unit.field(), 1, unit);
        for (const auto& [g, m] : factors) r *= g.pow(static_cast<unsigned>(m));
        return r;
    }
};

/// Factor an element of Q_1 into normalized irreducible elements of Q_1 and a unit of A.
inline Q1Factorization factor_q1(const TPoly& f, const ModulusContext& ctx, FactorLimits limits = {}) {
    if (f.nvars() != 1) throw usage_error("factor_q1 handles one cube variable only");
    if (auto r = is_in_Qn(f, ctx); !r) throw math_error("factor_q1: not in Q_1: " + r.message);
    Q1Factorization out;
    out.unit = *f.leading_coefficient();
    const MPoly F = f.cleared();
    for (const auto& [g, m] : factor_multivariate(F, limits).factors) {
        if (!g.involves(0)) continue;
        TPoly gt = TPoly::from_mpoly(g, UniPoly::constant(f.field(), 1), 1);
        gt = gt.scale(gt.leading_coefficient()->inverse());
        if (auto r = is_in_Qn(gt, ctx); !r) throw math_error("factor_q1: factor outside Q_1: " + r.message);
        out.factors.emplace_back(std::move(gt), m);
    }
    if (!(out.product() == f)) throw math_error("factor_q1: product check failed");
    return out;
}

/// Relabel the cube variables (t_j becomes t_{sigma[j]}); membership in Q_n is preserved.
inline TPoly permute_variables(const TPoly& f, const std::vector<std::size_t>& sigma, const ModulusContext& ctx) {
    if (auto r = is_in_Qn(f, ctx); !r) throw math_error("permute_variables: not in Q_n: " + r.message);
    TPoly g = f.permute(sigma);
    if (auto r = is_in_Qn(g, ctx); !r) throw math_error("permute_variables: image left Q_n: " + r.message);
    return g;
}

}  // namespace suslin
