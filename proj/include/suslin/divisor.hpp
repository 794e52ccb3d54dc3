#pragma once

#include <map>
#include <optional>
#include <string>

#include "factor.hpp"
#include "mpoly.hpp"
#include "ratfunc.hpp"

namespace suslin {

/// A closed point of P^1: a monic irreducible polynomial in x, or the point at infinity.
class Place {
public:
    static Place infinity() { return Place(); }
    /// Trusts the caller that p is monic irreducible; use checked() for untrusted input.
    static Place finite(UniPoly p) { return Place(std::move(p)); }
    static Place checked(const UniPoly& p) {
        if (!p.is_monic() || !is_irreducible(p))
            throw usage_error("place polynomial " + p.to_string() + " is not monic irreducible");
        return Place(p);
    }

    bool is_infinity() const { return !poly_; }
    const UniPoly& poly() const {
        if (!poly_) throw usage_error("the place at infinity has no polynomial");
        return *poly_;
    }
    int residue_degree() const { return poly_ ? poly_->degree() : 1; }

    /// Finite places in canonical polynomial order, infinity last.
    friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() <=> b.is_infinity();
        return *a.poly_ <=> *b.poly_;
    }
    friend bool operator==(const Place& a, const Place& b) { return (a <=> b) == 0; }

    std::string to_string() const { return poly_ ? "{" + poly_->to_string() + "}" : "inf"; }

private:
    Place() = default;
    explicit Place(UniPoly p) : poly_(std::move(p)) {}
    std::optional<UniPoly> poly_;
};

/// Order of vanishing of a univariate polynomial at a place (at infinity: minus the degree).
inline int valuation(const Place& P, const UniPoly& f) {
    if (f.is_zero()) throw math_error("valuation of zero");
    if (P.is_infinity()) return -f.degree();
    int v = 0;
    UniPoly g = f;
    for (;;) {
        auto [q, r] = divmod(g, P.poly());
        if (!r.is_zero()) return v;
        g = std::move(q);
        ++v;
    }
}

inline int valuation(const Place& P, const RatFunc& f) {
    if (f.is_zero()) throw math_error("valuation of zero");
    return valuation(P, f.num()) - valuation(P, f.den());
}

/// Formal integer combination of places; zero multiplicities are never stored.
class Divisor {
public:
    Divisor() = default;
    explicit Divisor(const Place& P, int m = 1) { add(P, m); }

    void add(const Place& P, int m) {
        if (!m) return;
        auto [it, inserted] = c_.emplace(P, m);
        if (!inserted) {
            it->second += m;
            if (!it->second) c_.erase(it);
        }
    }
    int operator[](const Place& P) const {
        auto it = c_.find(P);
        return it == c_.end() ? 0 : it->second;
    }
    const std::map<Place, int>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_effective() const {
        for (const auto& [P, m] : c_)
            if (m < 0) return false;
        return true;
    }
    long degree() const {
        long d = 0;
        for (const auto& [P, m] : c_) d += static_cast<long>(m) * P.residue_degree();
        return d;
    }
    Divisor positive_part() const {
        Divisor r;
        for (const auto& [P, m] : c_)
            if (m > 0) r.add(P, m);
        return r;
    }
    Divisor negative_part() const {
        Divisor r;
        for (const auto& [P, m] : c_)
            if (m < 0) r.add(P, -m);
        return r;
    }

    friend Divisor operator+(Divisor a, const Divisor& b) {
        for (const auto& [P, m] : b.c_) a.add(P, m);
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        for (const auto& [P, m] : b.c_) a.add(P, -m);
        return a;
    }
    friend Divisor operator*(int n, const Divisor& d) {
        Divisor r;
        for (const auto& [P, m] : d.c_) r.add(P, n * m);
        return r;
    }
    Divisor operator-() const { return -1 * *this; }
    Divisor& operator+=(const Divisor& o) { return *this = *this + o; }
    Divisor& operator-=(const Divisor& o) { return *this = *this - o; }
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.c_ == b.c_; }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (const auto& [P, m] : c_) {
            if (!s.empty()) s += m < 0 ? " - " : " + ";
            else if (m < 0) s += "-";
            const int a = m < 0 ? -m : m;
            if (a != 1) s += std::to_string(a) + "*";
            s += P.to_string();
        }
        return s;
    }

private:
    std::map<Place, int> c_;
};

/// Divisor of zeros minus poles of a nonzero polynomial, counting infinity.
inline Divisor principal_divisor(const UniPoly& f) {
    if (f.is_zero()) throw math_error("principal divisor of zero");
    Divisor d;
    for (const auto& [g, m] : factor_univariate(f).factors) d.add(Place::finite(g.with_var(f.var())), m);
    d.add(Place::infinity(), -f.degree());
    return d;
}

inline Divisor principal_divisor(const RatFunc& f) {
    if (f.is_zero()) throw math_error("principal divisor of zero");
    return principal_divisor(f.num()) - principal_divisor(f.den());
}

/// D precedes E: on the normal curve P^1 this is coefficientwise comparison of effective divisors.
inline bool prec(const Divisor& D, const Divisor& E) {
    if (!D.is_effective() || !E.is_effective()) throw math_error("prec: divisors must be effective");
    for (const auto& [P, m] : D.terms())
        if (E[P] < m) return false;
    return true;
}

/// A finite map P^1 -> P^1 given by a nonconstant rational function.
class RationalMap {
public:
    explicit RationalMap(RatFunc phi) : phi_(std::move(phi)) {
        if (phi_.is_constant()) throw math_error("rational map must be nonconstant");
    }
    const RatFunc& function() const { return phi_; }
    int degree() const { return std::max(phi_.num().degree(), phi_.den().degree()); }

    /// Evaluate a polynomial at phi as a rational function.
    RatFunc compose(const UniPoly& p) const {
        const auto& k = phi_.field();
        RatFunc r = RatFunc::zero(k, phi_.var());
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
            r = r * phi_ + RatFunc::constant(k, *it, phi_.var());
        return r;
    }

    Divisor pullback(const Divisor& D) const {
        Divisor out;
        for (const auto& [P, m] : D.terms()) {
            Divisor fiber = P.is_infinity() ? principal_divisor(phi_).negative_part()
                                            : principal_divisor(compose(P.poly())).positive_part();
            out += m * fiber;
        }
        return out;
    }

    /// Image of a place with its residue-degree multiplicity: the divisor of the norm of a local equation.
    Divisor pushforward(const Place& Q) const {
        const auto& k = phi_.field();
        const auto& a = phi_.num();
        const auto& b = phi_.den();
        if (Q.is_infinity()) {
            if (a.degree() > b.degree()) return Divisor(Place::infinity());
            const fe v = a.degree() == b.degree() ? k.div(a.lc(), b.lc()) : 0;
            return Divisor(Place::finite(UniPoly::linear(k, v, a.var())));
        }
        const auto& q = Q.poly();
        if (q.divides(b)) return Divisor(Place::infinity(), q.degree());
        const std::vector<std::string> vars{"x", "y"};
        const auto qx = MPoly::from_uni(q, vars, 0);
        const auto y = MPoly::variable(k, vars, 1);
        const auto norm = resultant(qx, y * MPoly::from_uni(b, vars, 0) - MPoly::from_uni(a, vars, 0), 0);
        return principal_divisor(norm.to_uni(1).with_var(a.var())).positive_part();
    }
    Divisor pushforward(const Divisor& D) const {
        Divisor out;
        for (const auto& [P, m] : D.terms()) out += m * pushforward(P);
        return out;
    }

private:
    RatFunc phi_;
};

}  // namespace suslin
