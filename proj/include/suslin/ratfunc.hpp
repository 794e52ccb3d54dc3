#pragma once

#include <string>

#include "unipoly.hpp"

namespace suslin {

/// Element of k(x) in lowest terms with monic denominator.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(UniPoly num) : num_(std::move(num)), den_(UniPoly::constant(num_.field(), 1, num_.var())) {}
    RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static RatFunc constant(PrimeField k, fe c, std::string var = "x") {
        return RatFunc(UniPoly::constant(k, c, std::move(var)));
    }
    static RatFunc zero(PrimeField k, std::string var = "x") { return RatFunc(UniPoly(k, std::move(var))); }
    static RatFunc one(PrimeField k, std::string var = "x") { return constant(k, 1, std::move(var)); }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    const PrimeField& field() const { return num_.field(); }
    const std::string& var() const { return num_.var(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// Constant value; only meaningful when is_constant().
    fe constant_value() const { return num_.is_zero() ? 0 : num_[0]; }

    RatFunc inverse() const {
        if (is_zero()) throw math_error("inverse of zero rational function");
        return RatFunc(den_, num_);
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const { RatFunc r = *this; r.num_ = -r.num_; return r; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc scale(fe c) const { return RatFunc(num_.scale(c), den_); }
    RatFunc pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        RatFunc r = one(field(), var());
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
        if (auto c = a.num_ <=> b.num_; c != 0) return c;
        return a.den_ <=> b.den_;
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw math_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UniPoly::constant(den_.field(), 1, den_.var());
            return;
        }
        auto g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        const fe c = den_.field().inv(den_.lc());
        num_ = num_.scale(c);
        den_ = den_.scale(c);
    }

    UniPoly num_;
    UniPoly den_;
};

}  // namespace suslin
