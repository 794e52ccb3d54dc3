#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "suslin.hpp"

namespace suslin {

/// Seeded generators for the property checks. Q_n elements are drawn with condition (1) built in
/// and the remaining conditions rejection-tested.
class Sampler {
public:
    Sampler(const ModulusContext& ctx, std::uint64_t seed) : ctx_(ctx), k_(ctx.field()), rng_(seed) {}

    Rng& rng() { return rng_; }
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(int num = 1, int den = 2) { return uniform(1, den) <= num; }
    fe nonzero() { return static_cast<fe>(uniform(1, static_cast<int>(k_.characteristic()) - 1)); }

    UniPoly poly(int maxdeg) {
        std::vector<fe> c(static_cast<std::size_t>(maxdeg + 1));
        for (auto& a : c) a = static_cast<fe>(uniform(0, static_cast<int>(k_.characteristic()) - 1));
        return UniPoly(k_, std::move(c));
    }
    UniPoly monic(int deg) {
        return poly(deg - 1) + UniPoly::monomial(k_, deg);
    }
    /// Nonzero polynomial of degree <= maxdeg prime to s.
    UniPoly unit(int maxdeg) {
        for (;;) {
            UniPoly u = poly(maxdeg);
            if (!u.is_zero() && poly_gcd(u, ctx_.s()).is_constant()) return u;
        }
    }
    UniPoly irreducible(int maxdeg) {
        for (;;) {
            UniPoly u = monic(uniform(1, maxdeg));
            if (is_irreducible(u)) return u;
        }
    }
    Place place(int maxdeg, bool allow_infinity = true) {
        if (allow_infinity && coin(1, 6)) return Place::infinity();
        return Place::finite(irreducible(maxdeg));
    }
    Place place_off_modulus(int maxdeg) {
        for (;;) {
            Place P = place(maxdeg);
            if (!ctx_.on_modulus(P)) return P;
        }
    }
    Divisor effective_divisor(int maxdeg, int maxterms, bool allow_infinity = true) {
        Divisor d;
        const int terms = uniform(0, maxterms);
        for (int i = 0; i < terms; ++i) d.add(place(maxdeg, allow_infinity), uniform(1, 3));
        return d;
    }
    /// A divisor of Div(C, D).
    Divisor divisor_off_modulus(int maxdeg, int maxterms) {
        Divisor d;
        const int terms = uniform(1, maxterms);
        for (int i = 0; i < terms; ++i) d.add(place_off_modulus(maxdeg), uniform(-3, 3));
        return d;
    }
    /// A nonconstant rational function of degree <= maxdeg.
    RatFunc map(int maxdeg) {
        for (;;) {
            const UniPoly a = poly(maxdeg), b = poly(maxdeg);
            if (b.is_zero()) continue;
            RatFunc f(a, b);
            if (!f.is_constant()) return f;
        }
    }
    /// a = (w + s u) / w, an element of G(C, D).
    RatFunc g_element(int maxdeg) {
        const UniPoly w = unit(maxdeg).monic();
        return RatFunc(w + ctx_.s() * poly(maxdeg), w);
    }

    /// f in Q_n with t-degrees <= tdeg and x-degree of the free parts <= xdeg.
    TPoly qn(std::size_t n, int tdeg, int xdeg) {
        for (;;) {
            Exponent N(n);
            int total = 0;
            for (auto& d : N) {
                d = (n > 1 && coin(1, 5)) ? 0 : uniform(1, tdeg);
                total += d;
            }
            if (!total) continue;
            TPoly f(k_, n);
            Exponent I(n, 0);
            for (;;) {
                const int gap = detail::max_gap(N, I);
                const UniPoly sg = poly_pow(ctx_.s(), static_cast<unsigned>(gap));
                if (I == N) {
                    f.add_term(I, RatFunc(unit(coin(1, 3) ? 1 : 0), UniPoly::constant(k_, 1)));
                } else if (I == Exponent(n, 0)) {
                    f.add_term(I, RatFunc(sg * unit(xdeg), UniPoly::constant(k_, 1)));
                } else if (coin()) {
                    const UniPoly den = coin(1, 4) ? unit(1).monic() : UniPoly::constant(k_, 1);
                    f.add_term(I, RatFunc(sg * poly(xdeg), den));
                }
                std::size_t j = 0;
                while (j < n && I[j] == N[j]) I[j++] = 0;
                if (j == n) break;
                ++I[j];
            }
            if (is_in_Qn(f, ctx_)) return f;
        }
    }
    /// A polynomial close to Q_n: one condition is broken by a small perturbation (it may still land in Q_n).
    TPoly near_miss(std::size_t n, int tdeg, int xdeg) {
        TPoly f = qn(n, tdeg, xdeg);
        const Exponent N = f.degrees();
        switch (uniform(0, 2)) {
            case 0: {  // weaken the s-power of one coefficient
                Exponent I(n);
                for (std::size_t j = 0; j < n; ++j) I[j] = uniform(0, N[j]);
                const int gap = detail::max_gap(N, I);
                if (gap == 0) break;
                f.add_term(I, RatFunc(poly_pow(ctx_.s(), static_cast<unsigned>(gap - 1)) * unit(xdeg),
                                      UniPoly::constant(k_, 1)));
                break;
            }
            case 1: {  // leading coefficient meets a modulus prime
                const auto& p = ctx_.factors()[static_cast<std::size_t>(uniform(0, static_cast<int>(ctx_.factors().size()) - 1))].first;
                f.add_term(N, *f.leading_coefficient() * RatFunc(p - UniPoly::constant(k_, 1), UniPoly::constant(k_, 1)));
                break;
            }
            default:
                f = f.shift([&] {
                    Exponent m(n, 0);
                    m[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))] = 1;
                    return m;
                }());
        }
        return f;
    }

    /// f/g in NQ_1 with delta_1(f/g) = 0: g is phi(a) or phi(b) phi(a/b) for a = f(1)/f(inf) and a random b in G.
    /// For linear f, phi(a) = f, so the second form is used.
    QFraction kernel_pair(int tdeg, int xdeg) {
        const TPoly f = qn(1, tdeg, xdeg);
        const RatFunc a = one_over_infinity(f);
        if (f.degree_in(0) > 1 && coin()) return {canonical(f), phi(a, ctx_).num};
        const RatFunc b = g_element(xdeg);
        return {canonical(f), phi(b, ctx_).num * phi(a / b, ctx_).num};
    }

    /// A cycle of NQ_2 (delta_2 = 1): h(f1,g1) h(f2,g2) / h(f1 f2, g1 g2).
    QFraction cycle2(int tdeg, int xdeg, const ModulusContext& ctx) {
        const QFraction a = kernel_pair(tdeg, xdeg), b = kernel_pair(tdeg, xdeg);
        const QFraction ha = contract_delta2(a.num, a.den, ctx), hb = contract_delta2(b.num, b.den, ctx);
        const QFraction hab = contract_delta2(a.num * b.num, a.den * b.den, ctx);
        return ha * hb * hab.inverse();
    }

    /// A cycle of NQ_3: q(R1) q(R2) / q(R1 R2) for cycles R1, R2 of NQ_2.
    QFraction cycle3(int tdeg, int xdeg, const ModulusContext& ctx) {
        const QFraction r1 = cycle2(tdeg, xdeg, ctx), r2 = cycle2(tdeg, xdeg, ctx);
        return contract_higher(r1, ctx).q * contract_higher(r2, ctx).q * contract_higher(r1 * r2, ctx).q.inverse();
    }

private:
    ModulusContext ctx_;
    PrimeField k_;
    Rng rng_;
};

}  // namespace suslin
