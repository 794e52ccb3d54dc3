#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "unipoly.hpp"

namespace suslin {

struct UniFactorization {
    fe unit = 1;
    /// Monic irreducible factors with multiplicity, sorted by the canonical order.
    std::vector<std::pair<UniPoly, int>> factors;
    PrimeField field;
    std::string var = "x";

    UniPoly product() const {
        UniPoly r = UniPoly::constant(field, unit, var);
        for (const auto& [f, m] : factors) r *= poly_pow(f, static_cast<unsigned>(m));
        return r;
    }
};

namespace detail {

/// p-th root of a polynomial whose derivative vanishes (all exponents divisible by p).
inline UniPoly pth_root(const UniPoly& f) {
    const auto& k = f.field();
    const auto p = k.characteristic();
    std::vector<fe> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
    // a^p = a in F_p, so the coefficients stay put.
    return UniPoly(k, std::move(c), f.var());
}

/// Squarefree decomposition of a monic polynomial: list of (squarefree part, multiplicity).
inline std::vector<std::pair<UniPoly, int>> squarefree(const UniPoly& f) {
    std::vector<std::pair<UniPoly, int>> out;
    if (f.degree() <= 0) return out;
    const auto p = static_cast<int>(f.field().characteristic());
    auto d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree(pth_root(f))) out.emplace_back(g, m * p);
        return out;
    }
    auto c = poly_gcd(f, d);
    auto w = f / c;
    int i = 1;
    while (!w.is_constant()) {
        auto y = poly_gcd(w, c);
        auto z = w / y;
        if (!z.is_constant()) out.emplace_back(z.monic(), i);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_constant()) {
        for (auto& [g, m] : squarefree(pth_root(c.monic()))) out.emplace_back(g, m * p);
    }
    return out;
}

/// Distinct-degree factorization of a monic squarefree polynomial.
inline std::vector<std::pair<UniPoly, int>> distinct_degree(UniPoly f) {
    std::vector<std::pair<UniPoly, int>> out;
    const auto& k = f.field();
    const auto x = UniPoly::monomial(k, 1, 1, f.var());
    UniPoly h = x;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = poly_powmod(h, k.characteristic(), f);
        auto g = poly_gcd(h - x, f);
        if (!g.is_constant()) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (!f.is_constant()) out.emplace_back(f.monic(), f.degree());
    return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus; trace map in characteristic 2).
inline void equal_degree(const UniPoly& f, int d, Rng& rng, std::vector<UniPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const auto& k = f.field();
    const auto p = k.characteristic();
    std::uniform_int_distribution<fe> coef(0, p - 1);
    for (;;) {
        std::vector<fe> c(static_cast<std::size_t>(f.degree()));
        for (auto& a : c) a = coef(rng);
        UniPoly a(k, c, f.var());
        if (a.is_constant()) continue;
        UniPoly b;
        if (p == 2) {
            // a + a^2 + ... + a^(2^(d-1))
            UniPoly t = a % f;
            b = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % f;
                b = b + t;
            }
        } else {
            std::uint64_t e = 1;
            for (int i = 0; i < d; ++i) e *= p;
            b = poly_powmod(a, (e - 1) / 2, f) - UniPoly::constant(k, 1, f.var());
        }
        auto g = poly_gcd(b, f);
        if (!g.is_constant() && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Factor a nonzero univariate polynomial into monic irreducibles.
/// Splitting randomness is drawn from a generator seeded with `seed`, and the result is sorted,
/// so the output does not depend on the seed.
inline UniFactorization factor_univariate(const UniPoly& f, std::uint64_t seed = 0) {
    if (f.is_zero()) throw math_error("factor_univariate: zero polynomial");
    UniFactorization res;
    res.unit = f.lc();
    res.field = f.field();
    res.var = f.var();
    Rng rng(seed);
    std::map<UniPoly, int> acc;
    for (const auto& [sq, m] : detail::squarefree(f.monic())) {
        for (const auto& [g, d] : detail::distinct_degree(sq)) {
            std::vector<UniPoly> parts;
            detail::equal_degree(g, d, rng, parts);
            for (auto& q : parts) acc[q] += m;
        }
    }
    res.factors.assign(acc.begin(), acc.end());
    return res;
}

inline bool is_irreducible(const UniPoly& f) {
    if (f.degree() <= 0) return false;
    auto fac = factor_univariate(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace suslin
