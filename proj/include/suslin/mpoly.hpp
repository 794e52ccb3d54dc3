#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "unipoly.hpp"

namespace suslin {

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial over F_p in a named, ordered variable list.
/// Terms are kept in lex order with the first variable most significant.
class MPoly {
public:
    MPoly() = default;
    MPoly(PrimeField k, std::vector<std::string> vars) : k_(k), vars_(std::move(vars)) {}

    static MPoly constant(PrimeField k, std::vector<std::string> vars, fe c) {
        MPoly r(k, std::move(vars));
        r.add_term(Exponent(r.vars_.size(), 0), c);
        return r;
    }
    static MPoly variable(PrimeField k, std::vector<std::string> vars, std::size_t i, int e = 1) {
        MPoly r(k, std::move(vars));
        Exponent ex(r.vars_.size(), 0);
        ex.at(i) = e;
        r.add_term(ex, 1);
        return r;
    }
    static MPoly variable(PrimeField k, std::vector<std::string> vars, const std::string& name, int e = 1) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw usage_error("unknown variable " + name);
        const auto i = static_cast<std::size_t>(it - vars.begin());
        return variable(k, std::move(vars), i, e);
    }
    /// Embed a univariate polynomial in variable slot i.
    static MPoly from_uni(const UniPoly& u, std::vector<std::string> vars, std::size_t i) {
        MPoly r(u.field(), std::move(vars));
        for (std::size_t d = 0; d < u.coeffs().size(); ++d) {
            Exponent e(r.vars_.size(), 0);
            e.at(i) = static_cast<int>(d);
            r.add_term(e, u.coeffs()[d]);
        }
        return r;
    }

    const PrimeField& field() const { return k_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::optional<std::size_t> var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vars_.begin());
    }
    std::size_t index_of(const std::string& name) const {
        auto i = var_index(name);
        if (!i) throw usage_error("unknown variable " + name);
        return *i;
    }
    const std::map<Exponent, fe>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(),
                                                            [](int e) { return e == 0; }));
    }
    fe constant_value() const {
        auto it = t_.find(Exponent(vars_.size(), 0));
        return it == t_.end() ? 0 : it->second;
    }
    fe coeff(const Exponent& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? 0 : it->second;
    }
    int degree_in(std::size_t i) const {
        if (t_.empty()) return kDegreeNegInf;
        int d = 0;
        for (const auto& [e, c] : t_) d = std::max(d, e[i]);
        return d;
    }
    int total_degree() const {
        if (t_.empty()) return kDegreeNegInf;
        int d = 0;
        for (const auto& [e, c] : t_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }
    bool involves(std::size_t i) const { return degree_in(i) > 0; }
    /// Lex-leading term.
    const std::pair<const Exponent, fe>& leading() const { return *t_.rbegin(); }
    fe lc() const { return t_.empty() ? 0 : t_.rbegin()->second; }

    void add_term(const Exponent& e, fe c) {
        c %= k_.characteristic();
        if (!c) return;
        auto [it, inserted] = t_.emplace(e, c);
        if (!inserted) {
            it->second = k_.add(it->second, c);
            if (!it->second) t_.erase(it);
        }
    }

    MPoly scale(fe c) const {
        MPoly r(k_, vars_);
        if (c % k_.characteristic() == 0) return r;
        for (const auto& [e, a] : t_) r.t_.emplace(e, k_.mul(a, c));
        return r;
    }
    /// Scale so the lex-leading coefficient is 1.
    MPoly normalized() const { return is_zero() ? *this : scale(k_.inv(lc())); }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        a.check_compatible(b);
        MPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        a.check_compatible(b);
        MPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, a.k_.neg(c));
        return r;
    }
    MPoly operator-() const { return scale(k_.neg(1)); }
    friend MPoly operator+(const MPoly& a, fe c) { MPoly r = a; r.add_term(Exponent(a.nvars(), 0), c); return r; }
    friend MPoly operator-(const MPoly& a, fe c) { return a + a.k_.neg(c % a.k_.characteristic()); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_compatible(b);
        MPoly r(a.k_, a.vars_);
        Exponent e(a.vars_.size());
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, a.k_.mul(ca, cb));
            }
        return r;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly pow(unsigned n) const {
        MPoly r = constant(k_, vars_, 1);
        MPoly b = *this;
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }
    /// Multiply by the monomial with exponent e.
    MPoly shift(const Exponent& s) const {
        MPoly r(k_, vars_);
        for (const auto& [e, c] : t_) {
            Exponent n = e;
            for (std::size_t i = 0; i < n.size(); ++i) n[i] += s[i];
            r.t_.emplace(std::move(n), c);
        }
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.t_ == b.t_; }
    friend bool operator<(const MPoly& a, const MPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return std::lexicographical_compare(a.t_.rbegin(), a.t_.rend(), b.t_.rbegin(), b.t_.rend());
    }

    /// Exact quotient a / b, or nullopt if b does not divide a.
    friend std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b) {
        a.check_compatible(b);
        if (b.is_zero()) throw math_error("multivariate division by zero");
        MPoly q(a.k_, a.vars_), r = a;
        const auto& [lb, cb] = b.leading();
        const fe inv = a.k_.inv(cb);
        const std::size_t n = a.vars_.size();
        while (!r.is_zero()) {
            const auto [lr, cr] = r.leading();
            Exponent s(n);
            for (std::size_t i = 0; i < n; ++i) {
                s[i] = lr[i] - lb[i];
                if (s[i] < 0) return std::nullopt;
            }
            const fe c = a.k_.mul(cr, inv);
            q.add_term(s, c);
            for (const auto& [e, d] : b.t_) {
                Exponent m(n);
                for (std::size_t i = 0; i < n; ++i) m[i] = e[i] + s[i];
                r.add_term(m, a.k_.neg(a.k_.mul(c, d)));
            }
        }
        return q;
    }
    bool divides(const MPoly& a) const { return exact_div(a, *this).has_value(); }

    /// Coefficients as polynomials in variable i: result[d] multiplies var_i^d.
    std::vector<MPoly> coefficients_in(std::size_t i) const {
        std::vector<MPoly> out;
        if (t_.empty()) return out;
        out.assign(static_cast<std::size_t>(degree_in(i)) + 1, MPoly(k_, vars_));
        for (const auto& [e, c] : t_) {
            Exponent m = e;
            m[i] = 0;
            out[static_cast<std::size_t>(e[i])].add_term(m, c);
        }
        return out;
    }
    static MPoly from_coefficients(const std::vector<MPoly>& cs, std::size_t i, const MPoly& like) {
        MPoly r(like.k_, like.vars_);
        for (std::size_t d = 0; d < cs.size(); ++d) {
            Exponent s(like.vars_.size(), 0);
            s[i] = static_cast<int>(d);
            r += cs[d].shift(s);
        }
        return r;
    }
    MPoly lc_in(std::size_t i) const {
        auto cs = coefficients_in(i);
        return cs.empty() ? MPoly(k_, vars_) : cs.back();
    }

    /// Substitute the polynomial g (same ring) for variable i.
    MPoly substitute(std::size_t i, const MPoly& g) const {
        check_compatible(g);
        auto cs = coefficients_in(i);
        MPoly r(k_, vars_);
        for (std::size_t d = cs.size(); d-- > 0;) r = r * g + cs[d];
        return r;
    }
    MPoly substitute(std::size_t i, fe value) const { return substitute(i, constant(k_, vars_, value)); }
    /// var_i^deg_i * f(.., 1/var_i, ..): the dehomogenization on the chart at infinity.
    MPoly invert_variable(std::size_t i) const {
        const int d = degree_in(i);
        MPoly r(k_, vars_);
        for (const auto& [e, c] : t_) {
            Exponent m = e;
            m[i] = d - e[i];
            r.add_term(m, c);
        }
        return r;
    }
    /// Divide out the largest monomial dividing every term.
    MPoly strip_monomial(Exponent* removed = nullptr) const {
        Exponent g(vars_.size(), 0);
        bool first = true;
        for (const auto& [e, c] : t_) {
            if (first) { g = e; first = false; }
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
        }
        if (removed) *removed = g;
        MPoly r(k_, vars_);
        for (const auto& [e, c] : t_) {
            Exponent m = e;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] -= g[i];
            r.t_.emplace(std::move(m), c);
        }
        return r;
    }

    /// Re-express in another variable list, matching variables by name.
    MPoly rebase(const std::vector<std::string>& new_vars) const {
        std::vector<std::optional<std::size_t>> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it != new_vars.end()) pos[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        MPoly r(k_, new_vars);
        for (const auto& [e, c] : t_) {
            Exponent m(new_vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (!pos[i]) throw usage_error("variable " + vars_[i] + " not available in target ring");
                m[*pos[i]] = e[i];
            }
            r.add_term(m, c);
        }
        return r;
    }
    /// Rename variables positionally.
    MPoly renamed(std::vector<std::string> names) const {
        if (names.size() != vars_.size()) throw usage_error("renamed: arity mismatch");
        MPoly r = *this;
        r.vars_ = std::move(names);
        return r;
    }
    /// Univariate view when only variable i occurs.
    UniPoly to_uni(std::size_t i) const {
        std::vector<fe> c;
        for (const auto& [e, a] : t_) {
            for (std::size_t j = 0; j < e.size(); ++j)
                if (j != i && e[j]) throw usage_error("to_uni: polynomial involves " + vars_[j]);
            if (c.size() <= static_cast<std::size_t>(e[i])) c.resize(static_cast<std::size_t>(e[i]) + 1, 0);
            c[static_cast<std::size_t>(e[i])] = a;
        }
        return UniPoly(k_, std::move(c), vars_.empty() ? "x" : vars_[i]);
    }
    std::vector<std::size_t> support_vars() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (involves(i)) out.push_back(i);
        return out;
    }

    std::string to_string() const;

private:
    void check_compatible(const MPoly& o) const {
        if (vars_ != o.vars_) throw usage_error("polynomials live in different rings");
        if (!(k_ == o.k_)) throw usage_error("field mismatch");
    }

    PrimeField k_;
    std::vector<std::string> vars_;
    std::map<Exponent, fe> t_;
};

inline std::string MPoly::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        const auto s = k_.signed_rep(c);
        const bool negative = s < 0;
        const auto mag = negative ? -s : s;
        if (first) os << (negative ? "-" : "");
        else os << (negative ? " - " : " + ");
        first = false;
        bool any = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (any) mono << "*";
            mono << vars_[i];
            if (e[i] > 1) mono << "^" << e[i];
            any = true;
        }
        if (!any) os << mag;
        else if (mag == 1) os << mono.str();
        else os << mag << "*" << mono.str();
    }
    return os.str();
}

/// Determinant by fraction-free (Bareiss) elimination; all divisions are exact.
inline MPoly bareiss_det(std::vector<std::vector<MPoly>> m, const MPoly& like) {
    const std::size_t n = m.size();
    const auto& k = like.field();
    if (n == 0) return MPoly::constant(k, like.vars(), 1);
    MPoly prev = MPoly::constant(k, like.vars(), 1);
    bool negate = false;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        if (m[c][c].is_zero()) {
            std::size_t r = c + 1;
            while (r < n && m[r][c].is_zero()) ++r;
            if (r == n) return MPoly(k, like.vars());
            std::swap(m[c], m[r]);
            negate = !negate;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                auto num = m[c][c] * m[i][j] - m[i][c] * m[c][j];
                auto q = exact_div(num, prev);
                if (!q) throw math_error("Bareiss elimination: inexact division");
                m[i][j] = std::move(*q);
            }
            m[i][c] = MPoly(k, like.vars());
        }
        prev = m[c][c];
    }
    auto d = m[n - 1][n - 1];
    return negate ? -d : d;
}

/// Sylvester resultant of f and g with respect to variable i.
inline MPoly resultant(const MPoly& f, const MPoly& g, std::size_t i) {
    if (f.is_zero() || g.is_zero()) throw math_error("resultant of zero polynomial");
    const int m = f.degree_in(i), n = g.degree_in(i);
    if (m == 0 && n == 0) throw math_error("resultant: both polynomials have degree 0 in " + f.vars()[i]);
    if (m == 0) return f.pow(static_cast<unsigned>(n));
    if (n == 0) return g.pow(static_cast<unsigned>(m));
    auto fc = f.coefficients_in(i), gc = g.coefficients_in(i);
    const auto size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size, MPoly(f.field(), f.vars())));
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r)
        for (std::size_t d = 0; d <= static_cast<std::size_t>(m); ++d) s[r][r + d] = fc[static_cast<std::size_t>(m) - d];
    for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r)
        for (std::size_t d = 0; d <= static_cast<std::size_t>(n); ++d)
            s[static_cast<std::size_t>(n) + r][r + d] = gc[static_cast<std::size_t>(n) - d];
    return bareiss_det(std::move(s), f);
}

/// Pseudo-remainder of a by b in variable i: lc_i(b)^e * a mod b, returns (remainder, e).
inline std::pair<MPoly, int> pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t i) {
    const int db = b.degree_in(i);
    if (db < 0) throw math_error("pseudo_remainder by zero");
    const MPoly l = b.lc_in(i);
    MPoly r = a;
    int e = 0;
    while (!r.is_zero() && r.degree_in(i) >= db) {
        const int dr = r.degree_in(i);
        Exponent s(a.nvars(), 0);
        s[i] = dr - db;
        const MPoly lr = r.lc_in(i);
        r = r * l - (lr * b).shift(s);
        ++e;
    }
    return {r, e};
}

}  // namespace suslin
