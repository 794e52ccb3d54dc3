#pragma once

#include <map>
#include <string>
#include <vector>

#include "minpoly.hpp"
#include "modulus.hpp"

namespace suslin {

/// A P^1 factor of a product, identified by its affine coordinate, with the local equation of its
/// modulus (constant 1 if none) and whether it sits on the target side.
struct FactorModulus {
    std::string var;
    UniPoly eq;
    bool target = false;
};

/// Single affine chart: E restricted to {F = 0} precedes D restricted to {F = 0}, i.e. d_src / e_tgt is
/// integral over k[vars]/(F). F must be irreducible; z is a variable F involves.
inline bool check_modulus(const MPoly& F, std::size_t z, const MPoly& d_src, const MPoly& e_tgt,
                          bool verify_irreducible = true) {
    if (F.divides(d_src) || F.divides(e_tgt))
        throw math_error("modulus equation vanishes identically on the cycle " + F.to_string());
    return is_integral_on_hypersurface(F, z, d_src, e_tgt, verify_irreducible);
}

/// The modulus inequality on the closure of {F = 0} in a product of P^1's, tested on all 2^n affine charts.
inline MembershipReport check_modulus_projective(const MPoly& F, const std::vector<FactorModulus>& coords,
                                                 bool verify_irreducible = true) {
    if (F.is_constant()) throw usage_error("cycle equation is constant");
    if (verify_irreducible && !is_irreducible(F)) return {false, "cycle equation " + F.to_string() + " is reducible"};
    const auto& vars = F.vars();
    const auto& k = F.field();
    std::vector<const FactorModulus*> by_var(vars.size(), nullptr);
    for (const auto& c : coords) by_var.at(F.index_of(c.var)) = &c;

    const std::size_t n = vars.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        MPoly G = F;
        MPoly d = MPoly::constant(k, vars, 1), e = d;
        std::string chart;
        for (std::size_t i = 0; i < n; ++i) {
            const bool inv = mask & (std::size_t{1} << i);
            if (inv) G = G.invert_variable(i);
            chart += (chart.empty() ? "" : ",") + (inv ? "1/" + vars[i] : vars[i]);
            if (!by_var[i]) continue;
            const UniPoly& q = by_var[i]->eq;
            const auto local = MPoly::from_uni(inv ? q.reversed(q.degree()) : q, vars, i);
            (by_var[i]->target ? e : d) *= local;
        }
        std::size_t z = n;
        for (std::size_t i = 0; i < n; ++i)
            if (G.involves(i) && (z == n || (by_var[i] && by_var[i]->target && !(by_var[z] && by_var[z]->target))))
                z = i;
        if (G.divides(d) || G.divides(e))
            return {false, "chart (" + chart + "): a modulus equation vanishes identically on the cycle"};
        if (!is_integral_on_hypersurface(G, z, d, e, false))
            return {false, "chart (" + chart + "): ratio of modulus equations is not integral"};
    }
    return {};
}

/// Bivariate prime correspondence from (P^1, D) in x to (P^1, E) in y.
inline MembershipReport is_admissible(const MPoly& F, const ModulusContext& src, const ModulusContext& tgt) {
    if (F.nvars() != 2 || F.vars()[0] != "x" || F.vars()[1] != "y")
        throw usage_error("correspondence cycles live in k[x, y]");
    if (F.is_constant()) throw usage_error("cycle equation is constant");
    if (!F.involves(1)) return {false, "cycle " + F.to_string() + " is vertical over the source"};
    return check_modulus_projective(F, {{"x", src.s(), false}, {"y", tgt.s().with_var("y"), true}});
}

/// Finite correspondence with modulus: an integer combination of irreducible curves in P^1 x P^1.
class Correspondence {
public:
    static inline const std::vector<std::string> kVars{"x", "y"};

    Correspondence(ModulusContext src, ModulusContext tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {}

    const ModulusContext& source() const { return src_; }
    const ModulusContext& target() const { return tgt_; }
    const std::map<MPoly, int>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    /// Add m times the cycle {F = 0}; F must be irreducible.
    void add(const MPoly& F, int m) {
        if (F.vars() != kVars) throw usage_error("correspondence cycles live in k[x, y]");
        if (!m) return;
        auto key = F.normalized();
        auto [it, inserted] = t_.emplace(std::move(key), m);
        if (!inserted) {
            it->second += m;
            if (!it->second) t_.erase(it);
        }
    }

    MembershipReport admissibility() const {
        for (const auto& [F, m] : t_)
            if (auto r = is_admissible(F, src_, tgt_); !r) return r;
        return {};
    }

    friend Correspondence operator+(Correspondence a, const Correspondence& b) {
        if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_)) throw usage_error("adding correspondences between different pairs");
        for (const auto& [F, m] : b.t_) a.add(F, m);
        return a;
    }
    friend Correspondence operator*(int n, Correspondence c) {
        if (n == 0) c.t_.clear();
        for (auto& [F, m] : c.t_) m *= n;
        return c;
    }
    /// Equality of cycles; the modulus pairs are compared too.
    friend bool operator==(const Correspondence& a, const Correspondence& b) {
        return a.t_ == b.t_ && a.src_ == b.src_ && a.tgt_ == b.tgt_;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [F, m] : t_) {
            if (!s.empty()) s += " + ";
            s += std::to_string(m) + "*[" + F.to_string() + "]";
        }
        return s;
    }

private:
    ModulusContext src_, tgt_;
    std::map<MPoly, int> t_;
};

inline Correspondence diagonal(const ModulusContext& ctx) {
    Correspondence c(ctx, ctx);
    const auto& k = ctx.field();
    c.add(MPoly::variable(k, Correspondence::kVars, 1) - MPoly::variable(k, Correspondence::kVars, 0), 1);
    return c;
}

/// Graph of the map x -> phi(x): the curve b(x) y - a(x) = 0.
inline Correspondence graph(const RatFunc& phi, const ModulusContext& src, const ModulusContext& tgt) {
    if (phi.is_constant()) throw math_error("graph of a constant map");
    const auto& V = Correspondence::kVars;
    Correspondence c(src, tgt);
    c.add(MPoly::variable(phi.field(), V, 1) * MPoly::from_uni(phi.den(), V, 0) - MPoly::from_uni(phi.num(), V, 0), 1);
    return c;
}

inline Correspondence transpose(const Correspondence& S) {
    Correspondence t(S.target(), S.source());
    for (const auto& [F, m] : S.terms()) t.add(F.renamed({"y", "x"}).rebase(Correspondence::kVars), m);
    return t;
}

/// The modulus context of the pulled-back divisor phi^* E; E must pull back to a divisor away from infinity.
inline ModulusContext pullback_context(const RatFunc& phi, const ModulusContext& E) {
    const Divisor D = RationalMap(phi).pullback(E.divisor());
    std::vector<std::pair<UniPoly, int>> fs;
    for (const auto& [P, m] : D.terms()) {
        if (P.is_infinity()) throw math_error("pulled-back modulus meets infinity");
        fs.emplace_back(P.poly(), m);
    }
    return ModulusContext(E.field(), std::move(fs), {}, E.degree_bound(), E.seed());
}

/// T o S: apply S first, then T. Cycles are composed by eliminating the middle coordinate with a resultant;
/// factors of the resultant in x alone are vertical and dropped. The output is re-checked for admissibility.
inline Correspondence compose(const Correspondence& S, const Correspondence& T, bool check = true) {
    if (!(S.target() == T.source())) throw usage_error("compose: middle modulus pairs differ");
    if (check) {
        if (auto r = S.admissibility(); !r) throw math_error("compose: first argument inadmissible: " + r.violation);
        if (auto r = T.admissibility(); !r) throw math_error("compose: second argument inadmissible: " + r.violation);
    }
    const std::vector<std::string> V3{"x", "y", "z"};
    Correspondence out(S.source(), T.target());
    for (const auto& [F, m] : S.terms()) {
        const MPoly F3 = F.rebase(V3);
        for (const auto& [G, n] : T.terms()) {
            const MPoly G3 = G.renamed({"y", "z"}).rebase(V3);
            const MPoly R = resultant(F3, G3, 1);
            if (R.is_zero()) throw math_error("compose: cycles share a component");
            long total = 0;
            for (const auto& [H, e] : factor_multivariate(R).factors) {
                if (!H.involves(2)) continue;
                total += static_cast<long>(e) * H.degree_in(2);
                out.add(H.rebase({"x", "z"}).renamed(Correspondence::kVars), m * n * e);
            }
            if (total != static_cast<long>(F.degree_in(1)) * G.degree_in(1))
                throw math_error("compose: part of the composite lies over infinity");
        }
    }
    if (check)
        if (auto r = out.admissibility(); !r) throw math_error("compose: composite is inadmissible: " + r.violation);
    return out;
}

}  // namespace suslin
