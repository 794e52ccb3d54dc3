#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "correspondence.hpp"
#include "pic_oracle.hpp"
#include "sampling.hpp"

namespace suslin {

/// Outcome of a verification run. The first counterexample is kept; later failures only bump the count.
struct Report {
    std::string check;
    int degree_bound = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    bool pass = true;
    int failures = 0;
    nlohmann::json counterexample;
    nlohmann::json details = nlohmann::json::object();

    void fail(nlohmann::json ce) {
        if (pass) counterexample = std::move(ce);
        pass = false;
        ++failures;
    }
    /// Run one sample; exceptions from the library count as counterexamples.
    template <class F>
    void guard(const std::string& what, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            fail({{"property", what}, {"error", e.what()}});
        }
    }
    nlohmann::json to_json() const {
        nlohmann::json j;
        j["check"] = check;
        j["status"] = pass ? "pass" : "fail";
        j["counterexample"] = pass ? nlohmann::json(nullptr) : counterexample;
        if (!pass) j["failures"] = failures;
        j["scale"] = {{"degree_bound", degree_bound}, {"samples", samples}, {"seed", seed}};
        j["details"] = details;
        return j;
    }
};

// ---------------------------------------------------------------------------------------------
// Multiplication on the cube.

/// The closure of z = y1 y2 in (P^1)^3 with modulus {1} on every factor satisfies the modulus condition;
/// with 2{1} on the target it does not.
inline Report verify_mu(std::uint64_t seed = 0) {
    Report r{"mu", 0, 0, seed};
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const PrimeField k(p);
        const std::vector<std::string> V{"y1", "y2", "z"};
        const MPoly F = parse_mpoly("(z-1)*y1*y2 - (y1-1)*(y2-1)*z", k, V);
        const UniPoly e = parse_unipoly("x - 1", k);
        auto coords = [&](const UniPoly& target) {
            return std::vector<FactorModulus>{{"y1", e.with_var("y1"), false}, {"y2", e.with_var("y2"), false},
                                              {"z", target.with_var("z"), true}};
        };
        r.guard("mu", [&] {
            const auto ok = check_modulus_projective(F, coords(e));
            const auto strong = check_modulus_projective(F, coords(poly_pow(e, 2)));
            r.details["F" + std::to_string(p)] = {{"modulus_1", ok.ok}, {"modulus_2", strong.ok}};
            if (!ok) r.fail({{"property", "mu admissible"}, {"p", p}, {"violation", ok.violation}});
            if (strong) r.fail({{"property", "strengthened modulus rejected"}, {"p", p}});
        });
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// The order on effective divisors.

/// D precedes E computed from local equations: the finite part of D divides that of E, and the
/// multiplicities at infinity compare.
inline bool prec_by_equations(const Divisor& D, const Divisor& E, const PrimeField& k) {
    auto eq = [&](const Divisor& X) {
        UniPoly u = UniPoly::constant(k, 1);
        for (const auto& [P, m] : X.terms())
            if (!P.is_infinity()) u = u * poly_pow(P.poly(), static_cast<unsigned>(m));
        return u;
    };
    return eq(D).divides(eq(E)) && D[Place::infinity()] <= E[Place::infinity()];
}

inline Report verify_prec(int samples, std::uint64_t seed) {
    Report r{"prec", 3, samples, seed};
    int count = 0;
    for (std::uint32_t p : {3u, 5u}) {
        const PrimeField k(p);
        const auto ctx = ModulusContext::from_equation(parse_unipoly("x", k));
        Sampler S(ctx, seed + p);
        for (int i = 0; i < samples / 2; ++i, ++count) {
            const Divisor D = S.effective_divisor(2, 3), E0 = S.effective_divisor(2, 3), F0 = S.effective_divisor(2, 3);
            const Divisor E = D + E0, F = E + F0;
            const int n = S.uniform(2, 3);
            auto ce = [&](const char* what) {
                return nlohmann::json{{"property", what}, {"p", p}, {"D", D.to_string()}, {"E", E0.to_string()}};
            };
            r.guard("prec", [&] {
                if (!prec(D, E) || !prec_by_equations(D, E, k)) r.fail(ce("D <= E implies D < E"));
                if (!prec(D, D)) r.fail(ce("reflexive"));
                if (!prec(E, F) || !prec(D, F)) r.fail(ce("transitive"));
                for (const auto& [X, Y] : {std::pair{D, E0}, std::pair{E0, D}, std::pair{D, E}})
                    if (prec(n * X, n * Y) != prec(X, Y) || prec(X, Y) != prec_by_equations(X, Y, k))
                        r.fail(ce("n D < n E iff D < E"));
                const RationalMap phi(S.map(3));
                const Divisor pD = phi.pullback(D), pE = phi.pullback(E);
                if (!prec(pD, pE)) r.fail(ce("pullback preserves the order"));
                if (pD.degree() != phi.degree() * D.degree()) r.fail(ce("degree of pullback"));
                if (!(phi.pushforward(pD) == phi.degree() * D)) r.fail(ce("pushforward of pullback"));
                if (!prec(phi.pushforward(D), phi.pushforward(E))) r.fail(ce("pushforward preserves the order"));
            });
        }
    }
    r.samples = count;
    return r;
}

// ---------------------------------------------------------------------------------------------
// Correspondences.

namespace detail {

/// A modulus (x - a)^m with a random, and a map phi whose pullback of it avoids infinity.
inline std::pair<ModulusContext, RatFunc> random_map_with_modulus(Sampler& S, const PrimeField& k, int maxdeg) {
    for (;;) {
        const fe a = static_cast<fe>(S.uniform(0, static_cast<int>(k.characteristic()) - 1));
        const ModulusContext E(k, {{UniPoly::linear(k, a), S.uniform(1, 2)}});
        const RatFunc phi = S.map(maxdeg);
        try {
            (void)pullback_context(phi, E);
            return {E, phi};
        } catch (const math_error&) {
        }
    }
}

}  // namespace detail

inline Report verify_correspondences(int samples, std::uint64_t seed) {
    Report r{"correspondence", 2, samples, seed};
    const PrimeField k5(5), k3(3);
    // Graph followed by its transpose in the other order: d times the diagonal of the target.
    struct Named { const char* name; RatFunc phi; UniPoly e; };
    std::vector<std::pair<PrimeField, Named>> maps;
    for (const auto& k : {k3, k5}) {
        maps.push_back({k, {"x^2", RatFunc(parse_unipoly("x^2", k), UniPoly::constant(k, 1)), parse_unipoly("x - 1", k)}});
        maps.push_back({k, {"x^3", RatFunc(parse_unipoly("x^3", k), UniPoly::constant(k, 1)), parse_unipoly("x - 1", k)}});
        maps.push_back({k, {"(x+1)/(x-1)", RatFunc(parse_unipoly("x + 1", k), parse_unipoly("x - 1", k)),
                            parse_unipoly("x - 2", k)}});
    }
    for (const auto& [k, m] : maps) {
        r.guard(std::string("transpose identity ") + m.name, [&] {
            const ModulusContext E(k, {{m.e, 1}});
            const ModulusContext D = pullback_context(m.phi, E);
            const Correspondence G = graph(m.phi, D, E);
            const int d = RationalMap(m.phi).degree();
            const Correspondence lhs = compose(transpose(G), G);
            r.details["transpose"][m.name + std::string(" over F") + std::to_string(k.characteristic())] = lhs.to_string();
            if (!(lhs == d * diagonal(E)))
                r.fail({{"property", "graph after transpose is d times the diagonal"}, {"map", m.name},
                        {"p", k.characteristic()}, {"got", lhs.to_string()}});
        });
    }
    Sampler S3(ModulusContext::from_equation(parse_unipoly("x", k3)), seed),
        S5(ModulusContext::from_equation(parse_unipoly("x", k5)), seed);
    for (int i = 0; i < samples; ++i) {
        const PrimeField& k = i % 2 ? k5 : k3;
        Sampler& S = i % 2 ? S5 : S3;
        auto [E, phi] = detail::random_map_with_modulus(S, k, 2);
        RatFunc psi = S.map(2);
        for (;;) {
            try {
                (void)pullback_context(psi, E);
                break;
            } catch (const math_error&) {
                psi = S.map(2);
            }
        }
        r.guard("correspondence algebra", [&] {
            const ModulusContext X = pullback_context(phi, E), Y = pullback_context(psi, E);
            const Correspondence A = graph(phi, X, E), B = transpose(graph(psi, Y, E)), C = graph(psi, Y, E);
            auto ce = [&](const char* what) {
                return nlohmann::json{{"property", what}, {"p", k.characteristic()}, {"phi", phi.to_string()},
                                      {"psi", psi.to_string()}, {"E", E.s().to_string()}};
            };
            if (!(compose(diagonal(X), A) == A) || !(compose(A, diagonal(E)) == A)) r.fail(ce("diagonal is the identity"));
            if (!(compose(compose(A, B), C) == compose(A, compose(B, C)))) r.fail(ce("associativity"));
        });
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Q_n monoid.

struct MonoidScale {
    int products = 500, characterizations = 1000, factorizations = 200;
};

inline Report verify_monoid(const ModulusContext& ctx, MonoidScale scale, std::uint64_t seed) {
    Report r{"monoid", ctx.degree_bound(), scale.products + scale.characterizations + scale.factorizations, seed};
    Sampler S(ctx, seed);
    const int xd = std::min(ctx.degree_bound(), 2);
    int in = 0, out = 0;
    for (int i = 0; i < scale.products; ++i) {
        const std::size_t n = static_cast<std::size_t>(1 + i % 3);
        const int td = n == 3 ? 1 : 2;
        const TPoly f = S.coin() ? S.qn(n, td, xd) : S.near_miss(n, td, xd);
        const TPoly g = S.coin(3, 4) ? S.qn(n, td, xd) : S.near_miss(n, td, xd);
        r.guard("product closure", [&] {
            const bool a = bool(is_in_Qn(f, ctx)) && bool(is_in_Qn(g, ctx)), b = bool(is_in_Qn(f * g, ctx));
            (a ? in : out)++;
            if (a != b) r.fail({{"property", "f g in Q_n iff f, g in Q_n"}, {"f", f.to_string()}, {"g", g.to_string()}});
        });
    }
    r.details["products"] = {{"both_in", in}, {"not_both_in", out}};
    int near = 0;
    for (int i = 0; i < scale.characterizations; ++i) {
        const std::size_t n = static_cast<std::size_t>(1 + i % 3);
        const bool miss = S.coin();
        near += miss;
        const TPoly f = miss ? S.near_miss(n, 2, xd) : S.qn(n, 2, xd);
        r.guard("characterization", [&] {
            const auto c = check_characterization(f, ctx);
            if (!c.agree())
                r.fail({{"property", "definition agrees with the cofactor lemma"}, {"f", f.to_string()},
                        {"definition", c.definition}, {"lemma_identity", c.lemma_identity}, {"lemma_leading", c.lemma_leading}});
            if (localized_conditions_12(f, ctx) != c.definition)
                r.fail({{"property", "definition agrees with the per-variable reformulation"}, {"f", f.to_string()}});
        });
    }
    r.details["near_misses"] = near;
    for (int i = 0; i < scale.factorizations; ++i) {
        const int parts = S.uniform(2, 3);
        TPoly f = TPoly::constant(ctx.field(), 1, RatFunc(S.unit(1), UniPoly::constant(ctx.field(), 1)));
        for (int j = 0; j < parts; ++j) f *= S.qn(1, 2, 1);
        r.guard("factor_q1", [&] {
            const auto fac = factor_q1(f, ctx);
            if (!(fac.product() == f)) r.fail({{"property", "factor_q1 round trip"}, {"f", f.to_string()}});
            for (const auto& [g, m] : fac.factors)
                if (!is_in_Qn(g, ctx) || !is_irreducible(g.cleared()))
                    r.fail({{"property", "factors are irreducible elements of Q_1"}, {"f", f.to_string()}, {"factor", g.to_string()}});
        });
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Boundary maps.

struct ChainScale {
    int zpart = 300, chain = 200, diagram = 200;
};

inline Report verify_chain(const ModulusContext& ctx, ChainScale scale, std::uint64_t seed) {
    Report r{"chain", ctx.degree_bound(), scale.zpart + scale.chain + scale.diagram, seed};
    Sampler S(ctx, seed);
    const auto& k = ctx.field();
    const int xd = std::min(ctx.degree_bound(), 2);
    for (int i = 0; i < scale.zpart; ++i) {
        const TPoly f = S.qn(1, 3, xd);
        r.guard("z_part", [&] {
            const RatFunc a = one_over_infinity(f);
            if (!is_in_G(a, ctx)) r.fail({{"property", "f(1)/f(inf) lies in G"}, {"f", f.to_string()}});
            const Divisor lhs = z_part(0, Face::Zero, f, ctx) - z_part(0, Face::Infinity, f, ctx);
            if (!(lhs == principal_divisor(a)))
                r.fail({{"property", "Z_{1,0} - Z_{1,inf} = Div(f(1)/f(inf))"}, {"f", f.to_string()}, {"lhs", lhs.to_string()}});
            for (Face e : {Face::Zero, Face::Infinity})
                if (!z_part(0, e, f, ctx).is_effective()) r.fail({{"property", "z_part is effective"}, {"f", f.to_string()}});
        });
    }
    // Full model: d o d = 0 at levels 2 and 3; normalized model: delta o delta trivial.
    for (int i = 0; i < scale.chain; ++i) {
        const std::size_t n = static_cast<std::size_t>(2 + i % 2);
        r.guard("chain", [&] {
            const ChainElement c{S.divisor_off_modulus(2, 2),
                                 QFraction::of(S.qn(n, n == 2 ? 2 : 1, xd), S.qn(n, n == 2 ? 2 : 1, xd))};
            const ChainElement dd = boundary_full(boundary_full(c, ctx), ctx);
            if (!dd.is_zero()) r.fail({{"property", "d o d = 0"}, {"element", c.to_string()}, {"dd", dd.to_string()}});
            if (n == 2) {
                const QFraction q = S.kernel_pair(3, xd);
                const QFraction h = contract_delta2(q.num, q.den, ctx);
                if (!delta1(delta_n(h, ctx), ctx).is_zero())
                    r.fail({{"property", "delta_1 o delta_2 = 0"}, {"h", h.to_string()}});
                if (!check_structure_lemma(h, ctx)) r.fail({{"property", "structure lemma"}, {"h", h.to_string()}});
            } else {
                const QFraction R = S.cycle2(2, 1, ctx);
                const QFraction q = contract_higher(R, ctx).q;
                if (!delta_n(delta_n(q, ctx), ctx).is_one())
                    r.fail({{"property", "delta_2 o delta_3 = 1"}, {"q", q.to_string()}});
                if (!check_structure_lemma(q, ctx)) r.fail({{"property", "structure lemma"}, {"q", q.to_string()}});
            }
        });
    }
    // Boundary diagram on Q_2 and degenerate directions.
    for (int i = 0; i < scale.diagram; ++i) {
        const TPoly f = S.qn(2, 2, xd);
        r.guard("boundary diagram", [&] {
            const ChainElement c{{}, {f, TPoly::constant(k, 2, 1)}};
            for (std::size_t j = 0; j < 2; ++j)
                for (Face e : {Face::Zero, Face::Infinity}) {
                    const ChainElement a = face(j, e, c, ctx), b = geometric_face(j, e, f, ctx);
                    if (!(a == b))
                        r.fail({{"property", "face agrees with the geometric restriction"}, {"f", f.to_string()},
                                {"face", std::to_string(j + 1) + "," + to_string(e)}, {"model", a.to_string()},
                                {"geometric", b.to_string()}});
                }
            const std::size_t j = static_cast<std::size_t>(i % 2);
            const TPoly g = S.qn(1, 2, xd).insert_variable(j);
            const ChainElement cg{{}, {g, TPoly::constant(k, 2, 1)}};
            if (!(face(j, Face::Zero, cg, ctx) == face(j, Face::Infinity, cg, ctx)))
                r.fail({{"property", "degenerate direction has equal faces"}, {"f", g.to_string()}});
        });
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Homology.

/// H_0: theta on generators, surjectivity onto the torsion at the degree bound, boundaries in the kernel,
/// and explicit preimages for kernel elements.
inline Report verify_h0(const ModulusContext& ctx, int bound, int samples, std::uint64_t seed) {
    Report r{"h0", bound, samples, seed};
    const PicOracle oracle(ctx);
    const auto& k = ctx.field();
    r.details["oracle_group"] = oracle.structure();
    r.details["torsion_order"] = oracle.torsion_order();
    r.details["modulus"] = ctx.s().to_string();

    // (a) generators: all places of degree <= bound off the modulus, and infinity.
    std::vector<Place> gens{Place::infinity()};
    for (int d = 1; d <= bound; ++d) {
        std::vector<fe> c(static_cast<std::size_t>(d) + 1, 0);
        c.back() = 1;
        for (;;) {
            const UniPoly u(k, c);
            if (is_irreducible(u) && !ctx.on_modulus(Place::finite(u))) gens.push_back(Place::finite(u));
            std::size_t i = 0;
            while (i < static_cast<std::size_t>(d) && ++c[i] == k.characteristic()) c[i++] = 0;
            if (i == static_cast<std::size_t>(d)) break;
        }
    }
    r.details["generators"] = gens.size();
    std::set<std::vector<fe>> reached{UniPoly::constant(k, 1).coeffs()};
    std::vector<UniPoly> frontier{UniPoly::constant(k, 1)};
    std::vector<UniPoly> images;
    for (const auto& P : gens) {
        r.guard("theta on generators", [&] {
            const OracleElement t = oracle.theta(P);
            if (t.degree != P.residue_degree() || !(oracle.normalize(t.unit) == t.unit))
                r.fail({{"property", "theta lands in the oracle group"}, {"place", P.to_string()}});
            const OracleElement back = oracle.multiply(t, oracle.inverse(t));
            if (!(back == oracle.identity())) r.fail({{"property", "theta inverse"}, {"place", P.to_string()}});
            images.push_back(t.unit);
        });
    }
    // (b) degree-0 combinations P - deg(P) inf have torsion part theta(P).unit; close under products.
    while (!frontier.empty()) {
        std::vector<UniPoly> next;
        for (const auto& a : frontier)
            for (const auto& u : images) {
                UniPoly b = oracle.normalize(a * u);
                if (reached.insert(b.coeffs()).second) next.push_back(std::move(b));
            }
        frontier = std::move(next);
    }
    r.details["torsion_reached"] = reached.size();
    if (reached.size() != oracle.torsion_order())
        r.fail({{"property", "generators of degree <= bound reach every torsion class"}, {"reached", reached.size()},
                {"torsion_order", oracle.torsion_order()}});

    // (c) boundaries map to the identity; (d) kernel elements have explicit preimages.
    Sampler S(ctx, seed);
    const int xd = std::min(bound, 2);
    for (int i = 0; i < samples; ++i) {
        r.guard("boundaries", [&] {
            const QFraction q = QFraction::of(S.qn(1, 3, xd), S.qn(1, 3, xd));
            const Divisor z = delta1(q, ctx);
            if (!(z == z_part(0, Face::Zero, q, ctx) - z_part(0, Face::Infinity, q, ctx)))
                r.fail({{"property", "delta_1 = Z_{1,0} - Z_{1,inf}"}, {"q", q.to_string()}});
            if (!(oracle.theta(z) == oracle.identity()))
                r.fail({{"property", "theta kills boundaries"}, {"q", q.to_string()}, {"boundary", z.to_string()}});
        });
        r.guard("witnesses", [&] {
            Divisor Z = S.divisor_off_modulus(bound, 3);
            Z.add(Place::infinity(), static_cast<int>(-Z.degree()));
            const OracleElement t = oracle.theta(Z);
            Z = static_cast<int>(oracle.order_of(t.unit)) * Z;
            const RatFunc g = oracle.witness_relation(Z);
            if (!is_in_G(g, ctx) || !(principal_divisor(g) == Z))
                r.fail({{"property", "witness lies in G with divisor Z"}, {"Z", Z.to_string()}, {"g", g.to_string()}});
            const QFraction pre = phi(g, ctx);
            if (!(delta1(pre, ctx) == Z))
                r.fail({{"property", "phi(g) is a preimage"}, {"Z", Z.to_string()}, {"phi", pre.to_string()}});
        });
    }
    return r;
}

struct H1Scale {
    int kernel = 100, higher = 50;
};

/// H_1 and higher: delta_1-kernel elements are contracted by the explicit h, and cycles of NQ_2, NQ_3
/// by the higher formula.
inline Report verify_h1(const ModulusContext& ctx, H1Scale scale, std::uint64_t seed) {
    Report r{"h1", ctx.degree_bound(), scale.kernel + scale.higher, seed};
    Sampler S(ctx, seed);
    const int xd = std::min(ctx.degree_bound(), 2);
    for (int i = 0; i < scale.kernel; ++i) {
        const QFraction q = S.kernel_pair(3, xd);
        r.guard("contract_delta2", [&] {
            if (!delta1(q, ctx).is_zero()) r.fail({{"property", "kernel sample"}, {"q", q.to_string()}});
            if (!(one_over_infinity(q.num) == one_over_infinity(q.den)))
                r.fail({{"property", "delta_1(f/g) = 0 forces f(1)/f(inf) = g(1)/g(inf)"}, {"q", q.to_string()}});
            const QFraction h = contract_delta2(q.num, q.den, ctx);
            if (auto m = is_in_NQn(h, ctx); !m) r.fail({{"property", "h in NQ_2"}, {"h", h.to_string()}, {"why", m.message}});
            if (!(delta_n(h, ctx) == q)) r.fail({{"property", "delta_2(h) = f/g"}, {"q", q.to_string()}, {"h", h.to_string()}});
        });
    }
    int counts[2] = {0, 0};
    for (int i = 0; i < scale.higher; ++i) {
        const std::size_t n = static_cast<std::size_t>(2 + i % 2);
        r.guard("contract_higher", [&] {
            const QFraction z = n == 2 ? S.cycle2(2, 1, ctx) : S.cycle3(2, 1, ctx);
            const HigherContraction c = contract_higher(z, ctx);
            ++counts[n - 2];
            if (!c.h2_vanishes) r.fail({{"property", "h_2 vanishes on the faces"}, {"f/g", z.to_string()}});
            if (auto m = is_in_NQn(c.q, ctx); !m)
                r.fail({{"property", "q in NQ_{n+1}"}, {"f/g", z.to_string()}, {"why", m.message}});
            if (!(delta_n(c.q, ctx) == z)) r.fail({{"property", "delta_{n+1}(q) = f/g"}, {"f/g", z.to_string()}});
        });
    }
    r.details["higher"] = {{"n2", counts[0]}, {"n3", counts[1]}};
    return r;
}

}  // namespace suslin
