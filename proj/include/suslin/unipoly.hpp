#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "prime_field.hpp"

namespace suslin {

/// Degree reported for the zero polynomial.
inline constexpr int kDegreeNegInf = std::numeric_limits<int>::min();

/// Dense univariate polynomial over F_p; coefficient i multiplies var^i.
/// Canonical form: no trailing zero coefficients, so the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(PrimeField k, std::string var = "x") : k_(k), var_(std::move(var)) {}
    UniPoly(PrimeField k, std::vector<fe> coeffs, std::string var = "x")
        : k_(k), var_(std::move(var)), c_(std::move(coeffs)) {
        for (auto& a : c_) a %= k_.characteristic();
        trim();
    }

    UniPoly(PrimeField k, std::initializer_list<fe> coeffs, std::string var = "x")
        : UniPoly(k, std::vector<fe>(coeffs), std::move(var)) {}

    static UniPoly constant(PrimeField k, fe c, std::string var = "x") {
        return UniPoly(k, std::vector<fe>{c}, std::move(var));
    }
    static UniPoly monomial(PrimeField k, int deg, fe c = 1, std::string var = "x") {
        std::vector<fe> v(static_cast<std::size_t>(deg) + 1, 0);
        v.back() = c;
        return UniPoly(k, std::move(v), std::move(var));
    }
    /// x - a
    static UniPoly linear(PrimeField k, fe a, std::string var = "x") {
        return UniPoly(k, {k.neg(a), 1}, std::move(var));
    }

    const PrimeField& field() const { return k_; }
    const std::string& var() const { return var_; }
    UniPoly with_var(std::string v) const { UniPoly r = *this; r.var_ = std::move(v); return r; }
    const std::vector<fe>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return c_.empty() ? kDegreeNegInf : static_cast<int>(c_.size()) - 1; }
    fe lc() const { return c_.empty() ? 0 : c_.back(); }
    fe operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    fe eval(fe a) const {
        fe r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = k_.add(k_.mul(r, a), *it);
        return r;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scale(k_.inv(lc()));
    }
    UniPoly scale(fe a) const {
        UniPoly r(k_, var_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = k_.mul(c_[i], a);
        r.trim();
        return r;
    }
    UniPoly derivative() const {
        UniPoly r(k_, var_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = k_.mul(c_[i], k_.reduce(static_cast<std::int64_t>(i)));
        r.trim();
        return r;
    }
    /// Multiply by var^n.
    UniPoly shift(int n) const {
        if (is_zero()) return *this;
        UniPoly r(k_, var_);
        r.c_.assign(static_cast<std::size_t>(n), 0);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    /// var^deg * f(1/var) for deg >= degree(); the reversal used for charts at infinity.
    UniPoly reversed(int deg) const {
        UniPoly r(k_, var_);
        if (is_zero()) return r;
        r.c_.assign(static_cast<std::size_t>(deg) + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[static_cast<std::size_t>(deg) - i] = c_[i];
        r.trim();
        return r;
    }
    /// Substitute g for the variable.
    UniPoly compose(const UniPoly& g) const {
        UniPoly r(k_, g.var_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + constant(k_, *it, g.var_);
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.k_, a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.k_.add(a[i], b[i]);
        r.trim();
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.k_, a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.k_.sub(a[i], b[i]);
        r.trim();
        return r;
    }
    UniPoly operator-() const { return UniPoly(k_, var_) - *this; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.k_, a.var_);
        if (a.is_zero() || b.is_zero()) return r;
        const auto& k = a.k_;
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        const std::uint64_t p = k.characteristic();
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                acc[i + j] += std::uint64_t{a.c_[i]} * b.c_[j];
                if (acc[i + j] >= (1ull << 62)) acc[i + j] %= p;
            }
        }
        r.c_.resize(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<fe>(acc[i] % p);
        r.trim();
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    /// Euclidean division; throws on a zero divisor.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw math_error("polynomial division by zero");
        const auto& k = a.k_;
        UniPoly q(k, a.var_), r = a;
        if (a.degree() < b.degree()) return {q, r};
        q.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
        const fe inv_lc = k.inv(b.lc());
        for (int d = r.degree(); !r.is_zero() && d >= b.degree(); d = r.degree()) {
            const fe c = k.mul(r.lc(), inv_lc);
            const auto shift = static_cast<std::size_t>(d - b.degree());
            q.c_[shift] = c;
            for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] = k.sub(r.c_[i + shift], k.mul(c, b.c_[i]));
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
    bool divides(const UniPoly& a) const { return (a % *this).is_zero(); }

    /// Canonical order: degree first, then coefficients compared from the top down.
    friend std::strong_ordering operator<=>(const UniPoly& a, const UniPoly& b) {
        if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            auto s = k_.signed_rep(c_[i]);
            const bool negative = s < 0;
            const auto mag = negative ? -s : s;
            if (first) os << (negative ? "-" : "");
            else os << (negative ? " - " : " + ");
            first = false;
            if (i == 0) { os << mag; continue; }
            if (mag != 1) os << mag << "*";
            os << var_;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }

    PrimeField k_;
    std::string var_ = "x";
    std::vector<fe> c_;
};

inline void require_same_var(const UniPoly& a, const UniPoly& b) {
    if (a.var() != b.var()) throw usage_error("variable mismatch: " + a.var() + " vs " + b.var());
    if (!(a.field() == b.field())) throw usage_error("field mismatch");
}

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    require_same_var(a, b);
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, u, v) with u*a + v*b = g monic.
inline std::tuple<UniPoly, UniPoly, UniPoly> poly_xgcd(const UniPoly& a, const UniPoly& b) {
    require_same_var(a, b);
    const auto& k = a.field();
    UniPoly r0 = a, r1 = b;
    UniPoly s0 = UniPoly::constant(k, 1, a.var()), s1(k, a.var());
    UniPoly t0(k, a.var()), t1 = UniPoly::constant(k, 1, a.var());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const fe c = k.inv(r0.lc());
    return {r0.scale(c), s0.scale(c), t0.scale(c)};
}

/// Inverse of a modulo m; throws if not coprime.
inline UniPoly poly_inverse_mod(const UniPoly& a, const UniPoly& m) {
    auto [g, u, v] = poly_xgcd(a % m, m);
    if (!g.is_one()) throw math_error("polynomial not invertible modulo " + m.to_string());
    return u % m;
}

inline UniPoly poly_powmod(UniPoly base, std::uint64_t e, const UniPoly& m) {
    UniPoly r = UniPoly::constant(base.field(), 1, base.var()) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

inline UniPoly poly_pow(const UniPoly& base, unsigned e) {
    UniPoly r = UniPoly::constant(base.field(), 1, base.var());
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace suslin
