#pragma once

#include <vector>

#include "factor.hpp"
#include "mpoly.hpp"

namespace suslin {

struct MFactorization {
    fe unit = 1;
    /// Irreducible factors normalized to lex-leading coefficient 1, with multiplicity, sorted.
    std::vector<std::pair<MPoly, int>> factors;
};

/// Size limits for the Kronecker factor search.
struct FactorLimits {
    int max_univariate_degree = 900;
    /// Bound on the number of candidate divisors actually tried.
    std::size_t max_candidates = std::size_t{1} << 20;
};

namespace detail {

struct Kronecker {
    std::vector<long> weight;
    std::vector<int> base;

    explicit Kronecker(const MPoly& f) {
        long w = 1;
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            weight.push_back(w);
            base.push_back(f.degree_in(i) + 1);
            w *= base.back();
        }
    }
    long degree_of(const MPoly& f) const {
        long d = 0;
        for (std::size_t i = 0; i < weight.size(); ++i) d += static_cast<long>(f.degree_in(i)) * weight[i];
        return d;
    }
    UniPoly forward(const MPoly& f) const {
        std::vector<fe> c(static_cast<std::size_t>(degree_of(f)) + 1, 0);
        for (const auto& [e, a] : f.terms()) {
            long n = 0;
            for (std::size_t i = 0; i < e.size(); ++i) n += e[i] * weight[i];
            c[static_cast<std::size_t>(n)] = a;
        }
        return UniPoly(f.field(), std::move(c), "T");
    }
    MPoly backward(const UniPoly& u, const MPoly& like) const {
        MPoly r(like.field(), like.vars());
        for (std::size_t n = 0; n < u.coeffs().size(); ++n) {
            if (!u.coeffs()[n]) continue;
            Exponent e(weight.size(), 0);
            long rest = static_cast<long>(n);
            for (std::size_t i = 0; i < weight.size(); ++i) {
                e[i] = static_cast<int>(rest % base[i]);
                rest /= base[i];
            }
            if (rest) return MPoly(like.field(), like.vars());
            r.add_term(e, u.coeffs()[n]);
        }
        return r;
    }
};

/// Next exponent vector c with 0 <= c_i <= m_i and sum c_i = total, in odometer order.
inline bool next_submultiset(std::vector<int>& c, const std::vector<int>& m, int total) {
    for (;;) {
        std::size_t i = 0;
        while (i < c.size() && c[i] == m[i]) c[i++] = 0;
        if (i == c.size()) return false;
        ++c[i];
        int sum = 0;
        for (int v : c) sum += v;
        if (sum == total) return true;
    }
}

/// Restrictions of f to a few lines: every variable but the last is set to a point of F_p.
/// A divisor of f restricts to a divisor on each line, which rejects most spurious candidates cheaply.
struct LineSieve {
    std::vector<std::vector<fe>> points;

    LineSieve(const MPoly& f, std::size_t count) {
        const std::size_t n = f.nvars();
        if (n < 2) return;
        const std::uint32_t p = f.field().characteristic();
        std::uint64_t code = 0, total = 1;
        for (std::size_t i = 0; i + 1 < n && total <= count; ++i) total *= p;
        for (; points.size() < count && code < total; ++code) {
            std::vector<fe> a;
            for (std::uint64_t c = code, i = 0; i + 1 < n; ++i, c /= p) a.push_back(static_cast<fe>(c % p));
            points.push_back(std::move(a));
        }
    }
    UniPoly restrict(const MPoly& f, const std::vector<fe>& a) const {
        MPoly g = f;
        for (std::size_t i = 0; i < a.size(); ++i) g = g.substitute(i, a[i]);
        return g.to_uni(f.nvars() - 1);
    }
    std::vector<UniPoly> images(const MPoly& f) const {
        std::vector<UniPoly> r;
        for (const auto& a : points) r.push_back(restrict(f, a));
        return r;
    }
    bool admits(const MPoly& g, const std::vector<UniPoly>& rest_images) const {
        for (std::size_t i = 0; i < points.size(); ++i) {
            const UniPoly gi = restrict(g, points[i]);
            if (gi.is_zero()) continue;
            if (!(rest_images[i] % gi).is_zero()) return false;
        }
        return true;
    }
};

}  // namespace detail

/// Factor a multivariate polynomial over F_p by Kronecker substitution: the image in F_p[T] is
/// factored exactly and sub-multisets of its factors are tried as candidate divisors, smallest first.
/// Throws DegreeBoundExceeded beyond the configured limits.
inline MFactorization factor_multivariate(const MPoly& f, FactorLimits limits = {}) {
    if (f.is_zero()) throw math_error("factor_multivariate: zero polynomial");
    MFactorization res;
    res.unit = f.lc();
    if (f.is_constant()) return res;

    detail::Kronecker kr(f);
    if (kr.degree_of(f) > limits.max_univariate_degree)
        throw DegreeBoundExceeded("Kronecker image degree " + std::to_string(kr.degree_of(f)) + " exceeds bound");
    auto uf = factor_univariate(kr.forward(f));
    // Distinct image factors with multiplicities; candidates are sub-multisets, fewest factors first.
    std::vector<UniPoly> items;
    std::vector<int> mult;
    int count = 0;
    for (const auto& [g, m] : uf.factors) {
        items.push_back(g);
        mult.push_back(m);
        count += m;
    }

    MPoly rest = f;
    const detail::LineSieve sieve(f, 8);
    auto rest_images = sieve.images(rest);
    std::size_t tried = 0;
    std::map<std::vector<std::pair<Exponent, fe>>, std::pair<MPoly, int>> found;
    auto record = [&](const MPoly& g) {
        auto n = g.normalized();
        std::vector<std::pair<Exponent, fe>> key(n.terms().begin(), n.terms().end());
        auto [it, inserted] = found.emplace(std::move(key), std::make_pair(n, 0));
        ++it->second.second;
    };

    int s = 1;
    while (2 * s <= count) {
        std::vector<int> c(items.size(), 0);
        bool hit = false;
        while (detail::next_submultiset(c, mult, s)) {
            UniPoly prod = UniPoly::constant(f.field(), 1, "T");
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i]) prod *= poly_pow(items[i], static_cast<unsigned>(c[i]));
            MPoly g = kr.backward(prod, f);
            if (g.is_zero() || g.is_constant()) continue;
            if (++tried > limits.max_candidates)
                throw DegreeBoundExceeded("Kronecker image has too many factor combinations");
            bool fits = true;
            for (std::size_t i = 0; i < f.nvars() && fits; ++i) fits = g.degree_in(i) <= rest.degree_in(i);
            if (!fits || !sieve.admits(g, rest_images)) continue;
            auto q = exact_div(rest, g);
            if (!q) continue;
            record(g);
            rest = *q;
            rest_images = sieve.images(rest);
            for (std::size_t i = 0; i < c.size(); ++i) mult[i] -= c[i];
            count -= s;
            hit = true;
            break;
        }
        if (!hit) ++s;
    }
    if (!rest.is_constant()) record(rest);

    for (auto& [key, val] : found) res.factors.push_back(val);
    std::sort(res.factors.begin(), res.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return res;
}

inline bool is_irreducible(const MPoly& f, FactorLimits limits = {}) {
    if (f.is_constant()) return false;
    auto fac = factor_multivariate(f, limits);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace suslin
