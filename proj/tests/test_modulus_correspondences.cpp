#include <gtest/gtest.h>

#include "support.hpp"

using namespace suslin;
using namespace testing_support;

namespace {

const std::vector<std::string> XY{"x", "y"};

Correspondence cycle(const std::string& F, const ModulusContext& src, const ModulusContext& tgt, int m = 1) {
    Correspondence c(src, tgt);
    c.add(M(F, src.field().characteristic(), XY), m);
    return c;
}

TEST(CheckModulus, MultiplicationCycle) {
    const std::vector<std::string> V{"y1", "y2", "z"};
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        const MPoly F = M("(z - 1)*y1*y2 - (y1 - 1)*(y2 - 1)*z", p, V);
        const MPoly d = M("(y1 - 1)*(y2 - 1)", p, V);
        EXPECT_TRUE(check_modulus(F, 2, d, M("z - 1", p, V)));
        EXPECT_FALSE(check_modulus(F, 2, d, M("(z - 1)^2", p, V)));
        // the ratio restricted to the cycle is y1 + y2 - 1
        EXPECT_TRUE(F.divides(d - M("(y1 + y2 - 1)*(z - 1)", p, V)));
    }
}

TEST(CheckModulus, DiagonalAndErrors) {
    for (int m = 1; m <= 3; ++m) {
        const MPoly xm = MPoly::variable(PrimeField(3), XY, 0, m), ym = MPoly::variable(PrimeField(3), XY, 1, m);
        EXPECT_TRUE(check_modulus(M("y - x", 3, XY), 1, xm, ym));
    }
    EXPECT_THROW(check_modulus(M("y - x", 3, XY), 1, M("y - x", 3, XY), M("y", 3, XY)), math_error);
}

TEST(CheckModulus, AgreesWithCharacteristicPolynomial) {
    // Monic cycles y^2 + a(x) y + b(x) with ratio x^i / y^j: both integrality tests must agree.
    std::mt19937_64 rng(8);
    const PrimeField k(3);
    int tested = 0;
    for (int i = 0; i < 80; ++i) {
        const MPoly F = MPoly::variable(k, XY, 1, 2) + MPoly::from_uni(random_poly(k, 2, rng), XY, 0) * MPoly::variable(k, XY, 1) +
                        MPoly::from_uni(random_poly(k, 3, rng), XY, 0);
        if (!is_irreducible(F)) continue;
        const MPoly d = MPoly::variable(k, XY, 0, static_cast<int>(rng() % 3));
        const MPoly e = MPoly::variable(k, XY, 1, 1 + static_cast<int>(rng() % 2));
        if (F.divides(e)) continue;
        EXPECT_EQ(check_modulus(F, 1, d, e), charpoly_integral(F, 1, d, e)) << F.to_string();
        ++tested;
    }
    EXPECT_GT(tested, 20);
}

TEST(Admissibility, GraphExamples) {
    const auto D2 = ctx(3, "x^2"), D1 = ctx(3, "x");
    const Correspondence G = graph(R("x^2", 3), D2, D1);
    EXPECT_TRUE(G.admissibility());
    EXPECT_FALSE(graph(R("x^2", 3), D1, D1).admissibility());
    EXPECT_TRUE(diagonal(D2).admissibility());
    EXPECT_TRUE(transpose(G).admissibility());
    EXPECT_EQ(transpose(transpose(G)), G);
    EXPECT_THROW(graph(R("2", 3), D1, D1), math_error);
}

TEST(Admissibility, Rejections) {
    const auto D = ctx(3, "x");
    EXPECT_FALSE(is_admissible(M("x - 1", 3, XY), D, D));
    EXPECT_FALSE(is_admissible(M("(y - x)*(y + x)", 3, XY), D, D));
    EXPECT_THROW(is_admissible(M("2", 3, XY), D, D), usage_error);
    // y = 1/x sends the modulus point 0 to infinity and infinity onto 0
    EXPECT_FALSE(is_admissible(M("x*y - 1", 3, XY), D, D));
}

TEST(Admissibility, GraphCriterionMatchesPullback) {
    // graph(phi) is admissible from (P^1, D) to (P^1, E) exactly when phi^* E precedes D (away from infinity).
    for (std::uint32_t p : {3u, 5u}) {
        Sampler S(ctx(p, "x"), 50 + p);
        int tested = 0;
        for (int i = 0; i < 60; ++i) {
            const RatFunc phi(S.monic(1 + S.uniform(0, 1)), UniPoly::constant(PrimeField(p), 1));
            const auto E = ctx(p, S.coin() ? "x" : "x^2");
            const Divisor pE = RationalMap(phi).pullback(E.divisor());
            const Divisor D = pE + S.effective_divisor(1, 1, false);
            if (D.is_zero() || D[Place::infinity()] != 0) continue;
            UniPoly s = UniPoly::constant(PrimeField(p), 1);
            for (const auto& [P, m] : D.terms()) s = s * poly_pow(P.poly(), static_cast<unsigned>(m));
            const auto src = ModulusContext::from_equation(s);
            EXPECT_TRUE(graph(phi, src, E).admissibility()) << phi.to_string();
            const Divisor smaller = pE - Divisor(pE.terms().begin()->first);
            if (!smaller.is_zero()) {
                UniPoly t = UniPoly::constant(PrimeField(p), 1);
                for (const auto& [P, m] : smaller.terms()) t = t * poly_pow(P.poly(), static_cast<unsigned>(m));
                EXPECT_FALSE(graph(phi, ModulusContext::from_equation(t), E).admissibility()) << phi.to_string();
            }
            ++tested;
        }
        EXPECT_GT(tested, 30);
    }
}

TEST(Admissibility, MonotoneInSourceModulus) {
    const auto E = ctx(5, "x");
    Sampler S(E, 77);
    for (int i = 0; i < 40; ++i) {
        const RatFunc phi = S.map(2);
        const Correspondence G = graph(phi, ctx(5, "x^2 - x"), E);
        for (const auto& [F, m] : G.terms()) {
            const bool small = is_admissible(F, ctx(5, "x^2 - x"), E).ok;
            const bool big = is_admissible(F, ctx(5, "x^3 - x^2"), E).ok;
            if (small) EXPECT_TRUE(big) << F.to_string();
        }
    }
}

TEST(Compose, GraphOfSquareTwice) {
    const auto D4 = ctx(3, "x^4"), D2 = ctx(3, "x^2"), D1 = ctx(3, "x");
    const Correspondence G1 = graph(R("x^2", 3), D4, D2), G2 = graph(R("x^2", 3), D2, D1);
    EXPECT_EQ(compose(G1, G2), graph(R("x^4", 3), D4, D1));
}

TEST(Compose, DiagonalIsIdentity) {
    const auto D = ctx(5, "x^2"), E = ctx(5, "x");
    Sampler S(E, 5);
    for (int i = 0; i < 10; ++i) {
        const RatFunc phi = RatFunc(S.monic(2), UniPoly::constant(PrimeField(5), 1));
        const Correspondence G = graph(phi, pullback_context(phi, E), E);
        if (!G.admissibility()) continue;
        EXPECT_EQ(compose(diagonal(G.source()), G), G);
        EXPECT_EQ(compose(G, diagonal(E)), G);
    }
    EXPECT_EQ(compose(diagonal(D), diagonal(D)), diagonal(D));
}

TEST(Compose, TransposeAgainstGraph) {
    // Going along the graph and back along its transpose multiplies by the degree on the target.
    for (std::uint32_t p : {3u, 5u}) {
        const auto E = ctx(p, "x - 1");
        for (const auto& [phi, d] : std::vector<std::pair<std::string, int>>{{"x^2", 2}, {"x^3", 3}}) {
            const RatFunc f = R(phi, p);
            const Correspondence G = graph(f, pullback_context(f, E), E);
            EXPECT_EQ(compose(transpose(G), G), d * diagonal(E)) << phi << " over F" << p;
        }
        const RatFunc mob = R("(x + 1)/(x - 1)", p);
        const auto Em = ctx(p, "x - 2");
        const Correspondence G = graph(mob, pullback_context(mob, Em), Em);
        EXPECT_EQ(compose(transpose(G), G), diagonal(Em));
        EXPECT_EQ(compose(G, transpose(G)), diagonal(G.source()));
    }
}

TEST(Compose, FibreProductOfSquare) {
    // The other order gives the fibre product over the target: the diagonal plus the antidiagonal.
    const auto E = ctx(5, "x - 1");
    const RatFunc f = R("x^2", 5);
    const Correspondence G = graph(f, pullback_context(f, E), E);
    Correspondence expect = diagonal(G.source());
    expect.add(M("y + x", 5, XY), 1);
    EXPECT_EQ(compose(G, transpose(G)), expect);
}

TEST(Compose, AssociativeAndBilinear) {
    const auto E = ctx(3, "x - 1");
    const RatFunc f = R("x^2 + 1", 3), g = R("x^2", 3);
    const auto Ef = pullback_context(f, E);
    const Correspondence A = graph(f, Ef, E);
    const auto Eg = pullback_context(g, Ef);
    const Correspondence B = graph(g, Eg, Ef);
    const Correspondence C = transpose(B);
    EXPECT_EQ(compose(compose(C, B), A), compose(C, compose(B, A)));
    EXPECT_EQ(compose(B, A + A), 2 * compose(B, A));
    EXPECT_EQ(compose(B + B, A), 2 * compose(B, A));
}

TEST(Compose, RejectsMismatchedPairs) {
    const auto D = ctx(3, "x"), E = ctx(3, "x^2");
    EXPECT_THROW(compose(diagonal(D), diagonal(E)), usage_error);
    EXPECT_THROW(compose(cycle("y - x^2", D, D), diagonal(D)), math_error);
}

TEST(Verify, MultiplicationCorrespondence) {
    const Report r = verify_mu();
    EXPECT_TRUE(r.pass) << r.to_json().dump();
}

TEST(Verify, CorrespondenceAlgebraSmall) {
    const Report r = verify_correspondences(6, 3);
    EXPECT_TRUE(r.pass) << r.to_json().dump();
}

TEST(Verify, PrecSmall) {
    const Report r = verify_prec(100, 4);
    EXPECT_TRUE(r.pass) << r.to_json().dump();
}

}  // namespace
