#pragma once

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divisor.hpp"
#include "mpoly.hpp"
#include "parse.hpp"
#include "ratfunc.hpp"

namespace suslin {

inline UniPoly poly_lcm(const UniPoly& a, const UniPoly& b) {
    return (a * b / poly_gcd(a, b)).monic();
}

/// Polynomial in the cube coordinates t_1..t_n with coefficients in k(x).
class TPoly {
public:
    TPoly() = default;
    TPoly(PrimeField k, std::size_t n) : k_(k), n_(n) {}

    static TPoly constant(PrimeField k, std::size_t n, const RatFunc& c) {
        TPoly r(k, n);
        r.add_term(Exponent(n, 0), c);
        return r;
    }
    static TPoly constant(PrimeField k, std::size_t n, fe c) { return constant(k, n, RatFunc::constant(k, c)); }
    static TPoly variable(PrimeField k, std::size_t n, std::size_t j, int e = 1) {
        TPoly r(k, n);
        Exponent m(n, 0);
        m.at(j) = e;
        r.add_term(m, RatFunc::one(k));
        return r;
    }

    const PrimeField& field() const { return k_; }
    std::size_t nvars() const { return n_; }
    const std::map<Exponent, RatFunc>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && is_zero_exponent(t_.begin()->first)); }
    RatFunc constant_term() const { return coeff(Exponent(n_, 0)); }

    RatFunc coeff(const Exponent& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? RatFunc::zero(k_) : it->second;
    }
    int degree_in(std::size_t j) const {
        int d = kDegreeNegInf;
        for (const auto& [e, c] : t_) d = std::max(d, e.at(j));
        return d;
    }
    Exponent degrees() const {
        Exponent N(n_, 0);
        for (const auto& [e, c] : t_)
            for (std::size_t j = 0; j < n_; ++j) N[j] = std::max(N[j], e[j]);
        return N;
    }
    /// The coefficient at (N_1, ..., N_n), if it is nonzero.
    std::optional<RatFunc> leading_coefficient() const {
        if (t_.empty()) throw math_error("leading coefficient of zero");
        auto it = t_.find(degrees());
        if (it == t_.end()) return std::nullopt;
        return it->second;
    }

    void add_term(const Exponent& e, const RatFunc& c) {
        if (e.size() != n_) throw usage_error("exponent arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = t_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend TPoly operator+(TPoly a, const TPoly& b) {
        a.check(b);
        for (const auto& [e, c] : b.t_) a.add_term(e, c);
        return a;
    }
    friend TPoly operator-(TPoly a, const TPoly& b) {
        a.check(b);
        for (const auto& [e, c] : b.t_) a.add_term(e, -c);
        return a;
    }
    TPoly operator-() const { return TPoly(k_, n_) - *this; }
    /// Multiplied through common denominators, so coefficient fractions are reduced once per term.
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return TPoly(a.k_, a.n_);
        UniPoly La, Lb;
        const MPoly F = a.cleared(&La), G = b.cleared(&Lb);
        return from_mpoly(F * G, La * Lb, a.n_);
    }
    TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
    TPoly& operator-=(const TPoly& o) { return *this = *this - o; }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }
    TPoly scale(const RatFunc& c) const {
        TPoly r(k_, n_);
        for (const auto& [e, a] : t_) r.add_term(e, a * c);
        return r;
    }
    TPoly pow(unsigned e) const {
        TPoly r = constant(k_, n_, 1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }
    /// Multiply by t^m.
    TPoly shift(const Exponent& m) const {
        TPoly r(k_, n_);
        for (const auto& [e, a] : t_) {
            Exponent f = e;
            for (std::size_t j = 0; j < n_; ++j) f[j] += m.at(j);
            r.t_.emplace(std::move(f), a);
        }
        return r;
    }

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    /// Set t_j to the value c; the result has one variable fewer.
    TPoly specialize(std::size_t j, const RatFunc& c) const {
        TPoly r(k_, n_ - 1);
        for (const auto& [e, a] : t_) r.add_term(drop(e, j), a * c.pow(e.at(j)));
        return r;
    }
    TPoly specialize(std::size_t j, fe c) const { return specialize(j, RatFunc::constant(k_, c)); }
    /// Coefficient of t_j^{N_j}, a polynomial in the remaining variables ("t_j = infinity").
    TPoly leading_in(std::size_t j) const {
        const int d = degree_in(j);
        TPoly r(k_, n_ - 1);
        for (const auto& [e, a] : t_)
            if (e.at(j) == d) r.add_term(drop(e, j), a);
        return r;
    }
    /// Coefficients in t_j, lowest degree first, as polynomials in the remaining variables.
    std::vector<TPoly> coefficients_in(std::size_t j) const {
        std::vector<TPoly> cs(static_cast<std::size_t>(std::max(degree_in(j), -1) + 1), TPoly(k_, n_ - 1));
        for (const auto& [e, a] : t_) cs[static_cast<std::size_t>(e.at(j))].add_term(drop(e, j), a);
        return cs;
    }
    /// Substitute t_j -> g (a polynomial in the same variables).
    TPoly substitute(std::size_t j, const TPoly& g) const {
        check(g);
        auto cs = coefficients_in(j);
        TPoly r(k_, n_);
        for (std::size_t d = cs.size(); d-- > 0;) r = r * g + cs[d].insert_variable(j);
        return r;
    }
    /// The same polynomial viewed in n + 1 variables, with a new variable at position j.
    TPoly insert_variable(std::size_t j) const {
        TPoly r(k_, n_ + 1);
        for (const auto& [e, a] : t_) {
            Exponent f = e;
            f.insert(f.begin() + static_cast<long>(j), 0);
            r.t_.emplace(std::move(f), a);
        }
        return r;
    }
    /// Relabel: t_j becomes t_{sigma[j]}.
    TPoly permute(const std::vector<std::size_t>& sigma) const {
        if (sigma.size() != n_) throw usage_error("permutation arity mismatch");
        std::vector<bool> seen(n_, false);
        for (auto s : sigma) {
            if (s >= n_ || seen[s]) throw usage_error("not a permutation");
            seen[s] = true;
        }
        TPoly r(k_, n_);
        for (const auto& [e, a] : t_) {
            Exponent f(n_);
            for (std::size_t j = 0; j < n_; ++j) f[sigma[j]] = e[j];
            r.t_.emplace(std::move(f), a);
        }
        return r;
    }
    /// Divide by the largest monomial t^m dividing f.
    TPoly strip_monomial(Exponent* removed = nullptr) const {
        Exponent g(n_, 0);
        bool first = true;
        for (const auto& [e, a] : t_) {
            if (first) { g = e; first = false; }
            for (std::size_t j = 0; j < n_; ++j) g[j] = std::min(g[j], e[j]);
        }
        if (removed) *removed = g;
        TPoly r(k_, n_);
        for (const auto& [e, a] : t_) {
            Exponent f = e;
            for (std::size_t j = 0; j < n_; ++j) f[j] -= g[j];
            r.t_.emplace(std::move(f), a);
        }
        return r;
    }

    /// Gauss extension of the valuation at P: the minimum over the coefficients.
    int gauss_valuation(const Place& P) const {
        if (t_.empty()) throw math_error("valuation of zero");
        int v = INT_MAX;
        for (const auto& [e, a] : t_) v = std::min(v, valuation(P, a));
        return v;
    }

    /// Least common multiple of the coefficient denominators (monic).
    UniPoly common_denominator() const {
        UniPoly L = UniPoly::constant(k_, 1);
        for (const auto& [e, a] : t_) L = poly_lcm(L, a.den());
        return L;
    }

    std::vector<std::string> var_names() const { return default_names(n_); }
    static std::vector<std::string> default_names(std::size_t n) {
        if (n == 1) return {"t"};
        std::vector<std::string> v;
        for (std::size_t j = 1; j <= n; ++j) v.push_back("t" + std::to_string(j));
        return v;
    }
    static std::vector<std::string> ring_vars(std::size_t n) {
        auto v = default_names(n);
        v.push_back("x");
        return v;
    }

    /// f * L as a polynomial in (t_1, ..., t_n, x), L the common denominator.
    MPoly cleared(UniPoly* denominator = nullptr) const {
        const UniPoly L = common_denominator();
        if (denominator) *denominator = L;
        const auto vars = ring_vars(n_);
        MPoly r(k_, vars);
        for (const auto& [e, a] : t_) {
            const UniPoly c = a.num() * (L / a.den());
            for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
                if (!c.coeffs()[i]) continue;
                Exponent m = e;
                m.push_back(static_cast<int>(i));
                r.add_term(m, c.coeffs()[i]);
            }
        }
        return r;
    }
    /// Inverse of cleared(): F / den with F in (t_1, ..., t_n, x) and den in x.
    static TPoly from_mpoly(const MPoly& F, const UniPoly& den, std::size_t n) {
        if (F.nvars() != n + 1) throw usage_error("from_mpoly: expected n cube variables followed by x");
        TPoly r(F.field(), n);
        std::map<Exponent, std::vector<fe>> acc;
        for (const auto& [e, c] : F.terms()) {
            Exponent m(e.begin(), e.begin() + static_cast<long>(n));
            auto& v = acc[m];
            const auto dx = static_cast<std::size_t>(e[n]);
            if (v.size() <= dx) v.resize(dx + 1, 0);
            v[dx] = c;
        }
        for (auto& [m, v] : acc) r.add_term(m, RatFunc(UniPoly(F.field(), std::move(v)), den));
        return r;
    }

    std::string to_string() const {
        UniPoly L;
        const MPoly F = cleared(&L);
        if (L.is_one()) return F.to_string();
        return "(" + F.to_string() + ")/(" + L.to_string() + ")";
    }

private:
    static bool is_zero_exponent(const Exponent& e) {
        for (int v : e)
            if (v) return false;
        return true;
    }
    static Exponent drop(const Exponent& e, std::size_t j) {
        Exponent f = e;
        f.erase(f.begin() + static_cast<long>(j));
        return f;
    }
    void check(const TPoly& o) const {
        if (n_ != o.n_) throw usage_error("cube polynomials in different numbers of variables");
        if (!(k_ == o.k_)) throw usage_error("field mismatch");
    }

    PrimeField k_;
    std::size_t n_ = 0;
    std::map<Exponent, RatFunc> t_;
};

/// Parse a cube polynomial written in x and t (n = 1) or t1..tn; a denominator may involve x only.
inline TPoly parse_tpoly(std::string_view text, PrimeField k, std::size_t n) {
    auto vars = TPoly::ring_vars(n);
    auto fr = parse_fraction(text, k, vars);
    if (auto q = exact_div(fr.num, fr.den)) return TPoly::from_mpoly(*q, UniPoly::constant(k, 1), n);
    for (std::size_t j = 0; j < n; ++j)
        if (fr.den.involves(j)) throw usage_error("denominator involves a cube variable: " + std::string(text));
    return TPoly::from_mpoly(fr.num, fr.den.to_uni(n).with_var("x"), n);
}

}  // namespace suslin
