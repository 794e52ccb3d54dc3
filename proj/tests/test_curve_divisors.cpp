#include <map>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace suslin;
using namespace testing_support;

namespace {

const Place inf = Place::infinity();

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(inf, R("1 - x^2", 3)), -2);
    EXPECT_EQ(valuation(Pl("x - 1", 5), R("(x - 1)^3/(x + 1)", 5)), 3);
    EXPECT_EQ(T("x^2*t1 + x^3", 3).gauss_valuation(Pl("x", 3)), 2);
    EXPECT_EQ(valuation(inf, R("x/(x^3 + 1)", 5)), 2);
    EXPECT_THROW(valuation(inf, RatFunc::zero(PrimeField(3))), math_error);
}

TEST(Valuation, AdditiveAndDegreeZero) {
    std::mt19937_64 rng(1);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Sampler S(ctx(p, "x"), rng());
        for (int i = 0; i < 100; ++i) {
            const RatFunc f = S.map(4), g = S.map(4);
            const Divisor Df = principal_divisor(f);
            EXPECT_EQ(Df.degree(), 0);
            EXPECT_EQ(principal_divisor(f * g), Df + principal_divisor(g));
            for (const auto& [P, m] : Df.terms()) {
                EXPECT_EQ(valuation(P, f), m);
                EXPECT_EQ(valuation(P, f * g), valuation(P, f) + valuation(P, g));
            }
        }
    }
}

TEST(PrincipalDivisor, Examples) {
    Divisor d;
    d.add(Pl("x - 1", 3), 1);
    d.add(Pl("x + 1", 3), 1);
    d.add(inf, -2);
    EXPECT_EQ(principal_divisor(R("1 - x^2", 3)), d);
    EXPECT_TRUE(principal_divisor(R("2", 3)).is_zero());
    EXPECT_EQ(principal_divisor(R("x", 5)), Divisor(Pl("x", 5)) - Divisor(inf));
}

TEST(Place, OrderingPutsInfinityLast) {
    const Divisor d = Divisor(inf) + Divisor(Pl("x^2 + 1", 3)) + Divisor(Pl("x", 3)) + Divisor(Pl("x + 2", 3));
    std::vector<Place> order;
    for (const auto& [P, m] : d.terms()) order.push_back(P);
    ASSERT_EQ(order.size(), 4u);
    EXPECT_EQ(order[0].poly(), U("x", 3));
    EXPECT_EQ(order[1].poly(), U("x + 2", 3));
    EXPECT_EQ(order[2].poly(), U("x^2 + 1", 3));
    EXPECT_TRUE(order[3].is_infinity());
    EXPECT_THROW(Pl("x^2 - 1", 3), usage_error);
}

TEST(Prec, Examples) {
    const Divisor zero(Pl("x", 3)), one(Pl("x - 1", 3));
    EXPECT_TRUE(prec(zero, 2 * zero));
    EXPECT_FALSE(prec(zero, one));
    EXPECT_THROW(prec(-1 * zero, zero), math_error);
}

TEST(Prec, OrderProperties) {
    for (std::uint32_t p : {3u, 5u}) {
        Sampler S(ctx(p, "x"), 7 + p);
        for (int i = 0; i < 200; ++i) {
            const Divisor D = S.effective_divisor(2, 3), E = S.effective_divisor(2, 3), F = S.effective_divisor(2, 3);
            EXPECT_TRUE(prec(D, D));
            EXPECT_TRUE(prec(D, D + E));
            if (prec(D, E) && prec(E, F)) EXPECT_TRUE(prec(D, F));
            EXPECT_EQ(prec(3 * D, 3 * E), prec(D, E));
            // independent: multiplicity comparison at every place of D
            bool le = true;
            for (const auto& [P, m] : D.terms()) le = le && m <= E[P];
            EXPECT_EQ(prec(D, E), le);
        }
    }
}

TEST(PullbackPushforward, Examples) {
    const RationalMap sq(R("x^2", 3));
    const Divisor zero(Pl("x", 3));
    EXPECT_EQ(sq.pullback(zero), 2 * zero);
    EXPECT_EQ(sq.pushforward(Divisor(Pl("x - 1", 3))), Divisor(Pl("x - 1", 3)));
    EXPECT_EQ(sq.pushforward(Divisor(Pl("x + 1", 3))), Divisor(Pl("x - 1", 3)));
    EXPECT_EQ(sq.pushforward(sq.pullback(zero)), 2 * zero);
    EXPECT_EQ(sq.pullback(Divisor(inf)), 2 * Divisor(inf));
    EXPECT_EQ(sq.pushforward(Divisor(Pl("x^2 + 1", 3))), 2 * Divisor(Pl("x + 1", 3)));
    EXPECT_THROW(RationalMap(R("2", 3)), math_error);
}

TEST(PullbackPushforward, DegreesAndPreservationOfPrec) {
    for (std::uint32_t p : {3u, 5u}) {
        Sampler S(ctx(p, "x"), 100 + p);
        for (int i = 0; i < 100; ++i) {
            const RationalMap phi(S.map(3));
            const Divisor D = S.effective_divisor(2, 3), E = D + S.effective_divisor(2, 2);
            const Divisor pD = phi.pullback(D), pE = phi.pullback(E);
            EXPECT_EQ(pD.degree(), phi.degree() * D.degree());
            EXPECT_EQ(phi.pushforward(pD), phi.degree() * D);
            EXPECT_EQ(phi.pushforward(D).degree(), D.degree());
            ASSERT_TRUE(prec(D, E));
            EXPECT_TRUE(prec(pD, pE));
            EXPECT_TRUE(prec(phi.pushforward(D), phi.pushforward(E)));
        }
    }
}

TEST(ModulusContext, Invariants) {
    const PrimeField k(3);
    EXPECT_THROW(ModulusContext(k, {}), usage_error);
    EXPECT_THROW(ModulusContext(k, {{U("x^2 - 1", 3), 1}}), usage_error);
    EXPECT_THROW(ModulusContext(k, {{U("x", 3), 1}, {U("x", 3), 2}}), usage_error);
    EXPECT_THROW(ModulusContext(k, {{U("x", 3), 0}}), usage_error);
    EXPECT_THROW(ModulusContext(k, {{U("x", 3), 1}}, {Pl("x", 3)}), usage_error);
    const auto c = ctx(3, "x^3 - x^2");
    EXPECT_EQ(c.s(), U("x^3 - x^2", 3));
    EXPECT_EQ(c.divisor(), 2 * Divisor(Pl("x", 3)) + Divisor(Pl("x - 1", 3)));
}

TEST(Groups, IsInGExamples) {
    const auto c = ctx(3, "x^2");
    EXPECT_TRUE(is_in_G(R("1 - x^2", 3), c));
    EXPECT_FALSE(is_in_G(R("1 - x", 3), c));
    EXPECT_TRUE(is_in_G(R("(1 - x^2)/(1 + x^2)", 3), c));
    EXPECT_FALSE(is_in_G(R("x + x^2", 3), c));
    EXPECT_FALSE(is_in_G(R("2", 3), c));
    EXPECT_THROW(is_in_G(RatFunc::zero(PrimeField(3)), c), math_error);
}

TEST(Groups, IsInDivCDExamples) {
    const auto c = ctx(3, "x^2");
    EXPECT_TRUE(is_in_Div_CD(Divisor(Pl("x - 1", 3)), c));
    EXPECT_FALSE(is_in_Div_CD(Divisor(Pl("x", 3)), c));
    EXPECT_TRUE(is_in_Div_CD(Divisor(inf), c));
}

/// Invariant factors of (k[x]/s)^x / k^x from the counts #{g : g^d = 1}, by direct enumeration.
std::vector<long> group_oracle(std::uint32_t p, const std::string& s_text) {
    const PrimeField k(p);
    const UniPoly s = U(s_text, p);
    const int n = s.degree();
    std::vector<UniPoly> units;
    for (int d = 0; d < n; ++d)
        for (const auto& u : monics(k, d))
            if (poly_gcd(u, s).is_one()) units.push_back(u);
    auto power_is_scalar = [&](const UniPoly& g, long e) {
        UniPoly r = UniPoly::constant(k, 1);
        for (long i = 0; i < e; ++i) r = (r * g) % s;
        return r.is_constant();
    };
    const long order = static_cast<long>(units.size());
    std::map<long, std::vector<int>> ranks;  // prime -> number of cyclic factors of order >= q^j
    long rest = order;
    for (long q = 2; q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        long prev = 1, qj = q;
        for (;;) {
            long cnt = 0;
            for (const auto& u : units) cnt += power_is_scalar(u, qj);
            if (cnt == prev) break;
            int r = 0;
            for (long c = cnt / prev; c > 1; c /= q) ++r;
            ranks[q].push_back(r);
            prev = cnt;
            qj *= q;
        }
    }
    std::size_t width = 0;
    for (const auto& [q, r] : ranks) width = std::max<std::size_t>(width, static_cast<std::size_t>(r.front()));
    std::vector<long> inv(width, 1);
    for (const auto& [q, r] : ranks)
        for (std::size_t j = 0; j < r.size(); ++j)
            for (int i = 0; i < r[j]; ++i) inv[width - 1 - static_cast<std::size_t>(i)] *= q;
    return inv;
}

TEST(PicOracle, Examples) {
    EXPECT_EQ(PicOracle(ctx(3, "x^2")).structure(), "Z + Z/3");
    EXPECT_EQ(PicOracle(ctx(2, "x^3")).structure(), "Z + Z/4");
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) EXPECT_EQ(PicOracle(ctx(p, "x")).torsion_order(), 1u);
}

TEST(PicOracle, InvariantFactorsMatchEnumeration) {
    const std::vector<std::pair<std::uint32_t, std::string>> cases{
        {3, "x^2"}, {2, "x^3"}, {2, "x^2 + x"}, {5, "x"}, {3, "x^3"}, {2, "x^4"}, {5, "x^2"},
        {2, "x^2 + x + 1"}, {3, "(x^2 + 1)^2"}, {7, "x^2 - 1"}, {2, "x^2*(x + 1)^2"}};
    const std::vector<std::vector<long>> frozen{{3}, {4}, {}, {}, {3, 3}, {2, 4}, {5}, {3}, {3, 12}, {6}, {2, 2}};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& [p, s] = cases[i];
        const auto oracle = group_oracle(p, s);
        EXPECT_EQ(oracle, frozen[i]) << p << " " << s;
        EXPECT_EQ(PicOracle(ctx(p, s)).invariant_factors(), oracle) << p << " " << s;
    }
}

TEST(PicOracle, ThetaKillsPrincipalDivisorsOfG) {
    for (const auto& [p, s] : std::vector<std::pair<std::uint32_t, std::string>>{{3, "x^2"}, {2, "x^3"}, {5, "x^2 - 1"}}) {
        const auto c = ctx(p, s);
        const PicOracle O(c);
        Sampler S(c, 9);
        for (int i = 0; i < 100; ++i) {
            const RatFunc a = S.g_element(3);
            ASSERT_TRUE(is_in_G(a, c));
            EXPECT_EQ(O.theta(principal_divisor(a)), O.identity());
        }
    }
}

TEST(PicOracle, WitnessRelation) {
    const auto c = ctx(3, "x^2");
    const PicOracle O(c);
    Sampler S(c, 4);
    int found = 0;
    for (int i = 0; i < 300 && found < 40; ++i) {
        const Divisor Z = S.divisor_off_modulus(2, 3);
        if (!(O.theta(Z) == O.identity())) {
            EXPECT_THROW(O.witness_relation(Z), math_error);
            continue;
        }
        const RatFunc g = O.witness_relation(Z);
        EXPECT_TRUE(is_in_G(g, c));
        EXPECT_EQ(principal_divisor(g), Z);
        ++found;
    }
    EXPECT_GT(found, 10);
}

TEST(PicOracle, ThetaIsAHomomorphism) {
    const auto c = ctx(2, "x^3");
    const PicOracle O(c);
    Sampler S(c, 12);
    for (int i = 0; i < 100; ++i) {
        const Divisor A = S.divisor_off_modulus(3, 3), B = S.divisor_off_modulus(3, 3);
        EXPECT_EQ(O.theta(A + B), O.multiply(O.theta(A), O.theta(B)));
        EXPECT_EQ(O.theta(A).degree, A.degree());
    }
    EXPECT_THROW(O.theta(Divisor(Pl("x", 2))), math_error);
}

}  // namespace
