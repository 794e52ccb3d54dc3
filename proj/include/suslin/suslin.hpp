#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mfactor.hpp"
#include "modulus.hpp"
#include "qn.hpp"
#include "tpoly.hpp"

namespace suslin {

/// Face of the cube: t_j = 1 (the face y_j = 0) or t_j = infinity.
enum class Face { Zero, Infinity };

inline std::string to_string(Face e) { return e == Face::Zero ? "0" : "inf"; }

/// The exact rho representative: f divided by the largest monomial dividing it.
inline TPoly rho_strip(const TPoly& f) { return f.strip_monomial(); }

/// Representative of the class of rho(f) in Q_n / A^x: monomial stripped, leading coefficient 1.
inline TPoly canonical(const TPoly& f) {
    if (f.is_zero()) throw math_error("canonical form of zero");
    TPoly g = rho_strip(f);
    if (g.is_constant()) return TPoly::constant(f.field(), f.nvars(), 1);
    auto lc = g.leading_coefficient();
    if (!lc) throw math_error("no leading coefficient: " + g.to_string());
    return g.scale(lc->inverse());
}

/// f(.., t_j = 1, ..) or the leading part in t_j; the result has one variable fewer.
inline TPoly face_substitute(const TPoly& f, std::size_t j, Face e) {
    if (j >= f.nvars()) throw usage_error("face index out of range");
    return e == Face::Zero ? f.specialize(j, 1) : f.leading_in(j);
}

/// Element f/g of (Q_n / A^x)^gp; equality is by cross-multiplication of canonical forms.
struct QFraction {
    TPoly num, den;

    static QFraction one(PrimeField k, std::size_t n) { return {TPoly::constant(k, n, 1), TPoly::constant(k, n, 1)}; }
    static QFraction of(const TPoly& f, const TPoly& g) { return QFraction{canonical(f), canonical(g)}.reduced(); }

    std::size_t level() const { return num.nvars(); }
    bool is_one() const { return canonical(num) == canonical(den); }
    QFraction inverse() const { return {den, num}; }
    /// Cancel an identical numerator and denominator.
    QFraction reduced() const {
        if (num == den) return one(num.field(), num.nvars());
        return *this;
    }
    friend QFraction operator*(const QFraction& a, const QFraction& b) {
        return QFraction{a.num * b.num, a.den * b.den}.reduced();
    }
    friend bool operator==(const QFraction& a, const QFraction& b) {
        if (a.num.nvars() != b.num.nvars()) return false;
        if (canonical(a.num) == canonical(b.num) && canonical(a.den) == canonical(b.den)) return true;
        return canonical(a.num * b.den) == canonical(b.num * a.den);
    }
    std::string to_string() const {
        if (den.is_constant() && canonical(den).is_constant()) return "[" + num.to_string() + "]";
        return "[" + num.to_string() + "] / [" + den.to_string() + "]";
    }
};

namespace detail {

/// Places of U (finite places off |D|, and infinity) where some coefficient of f has a zero or pole.
inline void collect_places(const TPoly& f, const ModulusContext& ctx, std::set<Place>& out) {
    out.insert(Place::infinity());
    for (const auto& [e, a] : f.terms())
        for (const UniPoly* u : {&a.num(), &a.den()})
            if (!u->is_constant())
                for (const auto& [p, m] : factor_univariate(*u).factors) {
                    const Place P = Place::finite(p);
                    if (!ctx.on_modulus(P)) out.insert(P);
                }
}

}  // namespace detail

/// Z_{j,e}(f) = sum over places Z of U of (-v_Z(f) + v_Z(f restricted to the face)) Z.
inline Divisor z_part(std::size_t j, Face e, const TPoly& f, const ModulusContext& ctx) {
    const TPoly g = face_substitute(f, j, e);
    if (g.is_zero()) throw math_error("z_part: face substitution vanishes");
    std::set<Place> places;
    detail::collect_places(f, ctx, places);
    detail::collect_places(g, ctx, places);
    Divisor d;
    for (const auto& P : places) d.add(P, -f.gauss_valuation(P) + g.gauss_valuation(P));
    return d;
}

inline Divisor z_part(std::size_t j, Face e, const QFraction& q, const ModulusContext& ctx) {
    return z_part(j, e, q.num, ctx) - z_part(j, e, q.den, ctx);
}

/// Classification of an irreducible polynomial in (t_1, ..., t_n, x) as a cube cycle.
struct CycleClass {
    enum Kind { Vertical, Dominant, Inadmissible } kind;
    Divisor vertical;
    TPoly dominant;
    std::string reason;
};

inline CycleClass classify_cycle(const MPoly& F, std::size_t n, const ModulusContext& ctx) {
    if (F.nvars() != n + 1) throw usage_error("classify_cycle: expected variables t_1..t_n, x");
    if (!is_irreducible(F)) throw math_error("classify_cycle: " + F.to_string() + " is reducible");
    bool has_t = false;
    for (std::size_t j = 0; j < n; ++j) has_t = has_t || F.involves(j);
    if (!has_t) {
        const Place P = Place::finite(F.to_uni(n).with_var("x").monic());
        if (ctx.on_modulus(P)) return {CycleClass::Inadmissible, {}, {}, "vertical cycle " + P.to_string() + " meets the modulus"};
        return {CycleClass::Vertical, Divisor(P), {}, ""};
    }
    const TPoly f = TPoly::from_mpoly(F, UniPoly::constant(F.field(), 1), n);
    if (auto r = is_in_Qn(f, ctx); !r)
        return {CycleClass::Inadmissible, {}, {}, "condition (" + std::to_string(r.condition) + "): " + r.message};
    return {CycleClass::Dominant, {}, canonical(f), ""};
}

/// Element of C_0 + (Q_n / A^x)^gp: a vertical divisor and a dominant fraction.
struct ChainElement {
    Divisor vertical;
    QFraction dominant;

    static ChainElement zero(PrimeField k, std::size_t n) { return {{}, QFraction::one(k, n)}; }
    std::size_t level() const { return dominant.level(); }

    friend ChainElement operator+(const ChainElement& a, const ChainElement& b) {
        return {a.vertical + b.vertical, a.dominant * b.dominant};
    }
    ChainElement operator-() const { return {-vertical, dominant.inverse()}; }
    friend ChainElement operator-(const ChainElement& a, const ChainElement& b) { return a + (-b); }
    friend bool operator==(const ChainElement& a, const ChainElement& b) {
        return a.vertical == b.vertical && a.dominant == b.dominant;
    }
    bool is_zero() const { return vertical.is_zero() && dominant.is_one(); }
    std::string to_string() const { return "(" + vertical.to_string() + ", " + dominant.to_string() + ")"; }
};

/// The face map on the polynomial model: vertical part gains Z_{j,e}, dominant part is restricted and rho-normalized.
inline ChainElement face(std::size_t j, Face e, const ChainElement& c, const ModulusContext& ctx) {
    if (c.level() == 0) throw usage_error("face of a level-0 element");
    const auto& q = c.dominant;
    QFraction d{canonical(face_substitute(q.num, j, e)), canonical(face_substitute(q.den, j, e))};
    return {c.vertical + z_part(j, e, q, ctx), d.reduced()};
}

/// d_n = sum_i (-1)^i (face(i, inf) - face(i, 0)) on the full cubical model.
inline ChainElement boundary_full(const ChainElement& c, const ModulusContext& ctx) {
    const std::size_t n = c.level();
    ChainElement acc = ChainElement::zero(ctx.field(), n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        ChainElement t = face(i, Face::Infinity, c, ctx) - face(i, Face::Zero, c, ctx);
        acc = acc + ((i + 1) % 2 ? -t : t);
    }
    return acc;
}

/// The face computed from the geometry of the closure: clear denominators, restrict the primitive equation
/// to the face, factor, and sort components into vertical ones (including x = infinity) and dominant ones.
inline ChainElement geometric_face(std::size_t j, Face e, const TPoly& f, const ModulusContext& ctx) {
    const std::size_t n = f.nvars();
    const auto& k = f.field();
    MPoly F = f.cleared();
    // Remove the content in k[x].
    UniPoly content(k);
    for (const auto& [ex, c] : f.terms()) content = poly_gcd(content, c.num() * (f.common_denominator() / c.den()));
    F = *exact_div(F, MPoly::from_uni(content, F.vars(), n));

    auto restrict_face = [&](const MPoly& G) {
        return e == Face::Zero ? G.substitute(j, fe{1}) : G.invert_variable(j).substitute(j, fe{0});
    };
    const MPoly G = restrict_face(F);
    if (G.is_zero()) throw math_error("geometric_face: cycle contains the face");

    Divisor vertical;
    MPoly dominant = MPoly::constant(k, F.vars(), 1);
    for (const auto& [H, m] : factor_multivariate(G).factors) {
        bool has_t = false;
        for (std::size_t i = 0; i < n; ++i) has_t = has_t || H.involves(i);
        if (!has_t) {
            vertical.add(Place::finite(H.to_uni(n).with_var("x").monic()), m);
            continue;
        }
        if (H.total_degree() == 1 && H.terms().size() == 1) continue;  // t_i = 0 lies on the modulus of the cube
        dominant *= H.pow(static_cast<unsigned>(m));
    }
    MPoly Ginf = restrict_face(F.invert_variable(n));
    const MPoly u = MPoly::variable(k, F.vars(), n);
    int mult = 0;
    while (auto q = exact_div(Ginf, u)) {
        Ginf = std::move(*q);
        ++mult;
    }
    vertical.add(Place::infinity(), mult);

    std::vector<std::string> rest = F.vars();
    rest.erase(rest.begin() + static_cast<long>(j));
    const TPoly dom = TPoly::from_mpoly(dominant.rebase(rest).renamed(TPoly::ring_vars(n - 1)), UniPoly::constant(k, 1), n - 1);
    return {vertical, QFraction{canonical(dom), TPoly::constant(k, n - 1, 1)}.reduced()};
}

// ---------------------------------------------------------------------------------------------
// The normalized complex NQ.

struct NQReport {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

/// Constant c with p = c * q, if the two polynomials are proportional.
inline std::optional<RatFunc> proportionality(const TPoly& p, const TPoly& q) {
    if (p.is_zero() || q.is_zero() || p.terms().size() != q.terms().size()) return std::nullopt;
    const RatFunc c = p.terms().rbegin()->second / q.terms().rbegin()->second;
    if (!(p == q.scale(c))) return std::nullopt;
    return c;
}

/// beta_{j,e}(f/g) is a unit of A for the faces other than (1, 0), and all of them coincide.
inline NQReport is_in_NQn(const QFraction& q, const ModulusContext& ctx) {
    const std::size_t n = q.level();
    if (n == 0) return {false, "level 0"};
    if (q.den.nvars() != n) return {false, "numerator and denominator in different levels"};
    for (const TPoly* p : {&q.num, &q.den})
        if (auto r = is_in_Qn(*p, ctx); !r) return {false, "not a quotient of Q_n elements: " + r.message};
    std::optional<RatFunc> common;
    for (std::size_t j = 0; j < n; ++j)
        for (Face e : {Face::Infinity, Face::Zero}) {
            if (j == 0 && e == Face::Zero) continue;
            const std::string name = "beta_{" + std::to_string(j + 1) + "," + to_string(e) + "}";
            auto c = proportionality(rho_strip(face_substitute(q.num, j, e)), rho_strip(face_substitute(q.den, j, e)));
            if (!c) return {false, name + " is not a constant"};
            if (!detail::is_unit_of_A(*c, ctx)) return {false, name + " = " + c->to_string() + " is not a unit of A"};
            if (common && !(*common == *c))
                return {false, name + " differs from another beta: ratio " + (*c / *common).to_string() + " is not 1"};
            common = c;
        }
    return {};
}

/// Each face other than (1, 0) sends f/g to (a/b) * prod_{i != j} t_i^{N_i - M_i}.
inline NQReport check_structure_lemma(const QFraction& q, const ModulusContext& ctx) {
    (void)ctx;
    const std::size_t n = q.level();
    const Exponent N = q.num.degrees(), M = q.den.degrees();
    for (std::size_t j = 0; j < n; ++j)
        for (Face e : {Face::Infinity, Face::Zero}) {
            if (j == 0 && e == Face::Zero) continue;
            Exponent mf, mg;
            const TPoly P = face_substitute(q.num, j, e).strip_monomial(&mf);
            const TPoly Q = face_substitute(q.den, j, e).strip_monomial(&mg);
            const std::string name = "face (" + std::to_string(j + 1) + "," + to_string(e) + ")";
            if (!proportionality(P, Q)) return {false, name + ": quotient is not a constant times a monomial"};
            for (std::size_t i = 0, r = 0; i < n; ++i) {
                if (i == j) continue;
                if (mf[r] - mg[r] != N[i] - M[i])
                    return {false, name + ": exponent of t_" + std::to_string(i + 1) + " is " + std::to_string(mf[r] - mg[r]) +
                                       ", expected " + std::to_string(N[i] - M[i])};
                ++r;
            }
        }
    return {};
}

inline QFraction canonical(const QFraction& q) { return QFraction::of(q.num, q.den); }

/// delta_1(f/g) = Div(f(1) g(inf) / (g(1) f(inf))).
inline Divisor delta1(const QFraction& q, const ModulusContext& ctx) {
    if (q.level() != 1) throw usage_error("delta1 needs a level-1 element");
    auto value = [&](const TPoly& f) {
        auto lc = f.leading_coefficient();
        return f.specialize(0, 1).constant_term() / *lc;
    };
    (void)ctx;
    return principal_divisor(value(q.num) / value(q.den));
}

/// delta_n(f/g) = rho(f(1, t_1, ..)) / rho(g(1, t_1, ..)) for n >= 2.
inline QFraction delta_n(const QFraction& q, const ModulusContext& ctx, bool check = true) {
    if (q.level() < 2) throw usage_error("delta_n needs level >= 2");
    if (check)
        if (auto r = is_in_NQn(q, ctx); !r) throw math_error("delta: input not in NQ_n: " + r.message);
    return QFraction::of(face_substitute(q.num, 0, Face::Zero), face_substitute(q.den, 0, Face::Zero));
}

/// The class of a in NQ_1: rho((1 - t) - a) normalized, i.e. t + a - 1 (or 1 when a = 1).
inline QFraction phi(const RatFunc& a, const ModulusContext& ctx) {
    if (auto r = is_in_G(a, ctx); !r) throw math_error("phi: argument not in G: " + r.violation);
    const auto& k = ctx.field();
    const TPoly f = TPoly::constant(k, 1, RatFunc::one(k) - a) - TPoly::variable(k, 1, 0);
    auto [g, m] = rho(f, ctx);
    return QFraction::of(g, TPoly::constant(k, 1, 1));
}

/// f(1) / f(inf) for f in Q_1.
inline RatFunc one_over_infinity(const TPoly& f) {
    if (f.nvars() != 1) throw usage_error("expected a level-1 polynomial");
    return f.specialize(0, 1).constant_term() / *f.leading_coefficient();
}

/// h in NQ_2 with delta_2(h) = f/g, for f, g in Q_1 with f(1)/f(inf) = g(1)/g(inf).
inline QFraction contract_delta2(const TPoly& f0, const TPoly& g0, const ModulusContext& ctx) {
    for (const TPoly* p : {&f0, &g0})
        if (auto r = is_in_Qn(*p, ctx); !r || p->nvars() != 1) throw math_error("contract_delta2: argument not in Q_1");
    if (!(one_over_infinity(f0) == one_over_infinity(g0)))
        throw math_error("contract_delta2: f(1)/f(inf) != g(1)/g(inf)");
    const TPoly f = canonical(f0), g = canonical(g0);
    const int n = f.degree_in(0), m = g.degree_in(0);
    if (n < m) return contract_delta2(g, f, ctx).inverse();
    const auto& k = f.field();
    const TPoly F2 = f.insert_variable(0), G2 = g.insert_variable(0);
    const TPoly t1 = TPoly::variable(k, 2, 0);
    const TPoly H = t1 * F2 - (F2 - TPoly::variable(k, 2, 1, n - m) * G2);
    auto [h, mono] = rho(H, ctx);
    return {F2, canonical(h)};
}

struct HigherContraction {
    QFraction q;
    TPoly h1, h2, h;
    bool h2_vanishes = false;
};

/// For f/g in NQ_n (n >= 2) with delta_n(f/g) = 1: q = f(t_2, ..) / rho(h_1 - h_2) in NQ_{n+1}.
inline HigherContraction contract_higher(const QFraction& q0, const ModulusContext& ctx) {
    const std::size_t n = q0.level();
    if (n < 2) throw usage_error("contract_higher needs level >= 2");
    if (auto r = is_in_NQn(q0, ctx); !r) throw math_error("contract_higher: input not in NQ_n: " + r.message);
    if (!delta_n(q0, ctx, false).is_one()) throw math_error("contract_higher: delta_n(f/g) is not trivial");
    const auto& k = ctx.field();
    const TPoly f = canonical(q0.num), g = canonical(q0.den);
    const Exponent N = f.degrees(), M = g.degrees();
    Exponent minus(n + 1, 0), plus(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int mi = N[i] - M[i];
        (mi >= 0 ? plus : minus)[i + 1] = std::abs(mi);
    }
    const TPoly F = f.insert_variable(0), G = g.insert_variable(0);
    HigherContraction out;
    out.h1 = F.shift(minus) * TPoly::variable(k, n + 1, 0);
    out.h2 = F.shift(minus) - G.shift(plus);
    out.h2_vanishes = true;
    for (std::size_t i = 1; i <= n; ++i) {
        const int R = std::max(N[i - 1], M[i - 1]);
        if (!out.h2.specialize(i, 1).is_zero()) out.h2_vanishes = false;
        const auto cs = out.h2.coefficients_in(i);
        if (cs.size() > static_cast<std::size_t>(R) && !cs[static_cast<std::size_t>(R)].is_zero()) out.h2_vanishes = false;
    }
    if (!out.h2_vanishes) throw math_error("contract_higher: h_2 does not vanish on the faces t_i = 1, inf");
    out.h = canonical(rho(out.h1 - out.h2, ctx).first);
    out.q = {F, out.h};
    return out;
}

}  // namespace suslin
