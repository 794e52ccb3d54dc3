#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divisor.hpp"

namespace suslin {

/// Effective modulus D = sum n_i (p_i) on P^1, supported in the affine line, plus extra valuations.
class ModulusContext {
public:
    ModulusContext(PrimeField k, std::vector<std::pair<UniPoly, int>> factors, std::vector<Place> extra = {},
                   int degree_bound = 4, std::uint64_t seed = 0)
        : k_(k), factors_(std::move(factors)), extra_(std::move(extra)), degree_bound_(degree_bound), seed_(seed) {
        if (factors_.empty()) throw usage_error("modulus must be nonzero");
        std::sort(factors_.begin(), factors_.end());
        s_ = UniPoly::constant(k_, 1);
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto& [p, n] = factors_[i];
            if (p.var() != "x") throw usage_error("modulus polynomials must be in x");
            if (!(p.field() == k_)) throw usage_error("modulus polynomial over the wrong field");
            if (!p.is_monic() || !is_irreducible(p))
                throw usage_error("modulus factor " + p.to_string() + " is not monic irreducible");
            if (n < 1) throw usage_error("modulus multiplicities must be positive");
            if (i > 0 && factors_[i - 1].first == p) throw usage_error("modulus factors must be distinct");
            s_ = s_ * poly_pow(p, static_cast<unsigned>(n));
        }
        std::sort(extra_.begin(), extra_.end());
        for (const auto& v : extra_)
            if (!v.is_infinity() && std::any_of(factors_.begin(), factors_.end(),
                                                [&](const auto& f) { return f.first == v.poly(); }))
                throw usage_error("extra valuation " + v.to_string() + " lies on the modulus");
        if (degree_bound_ < 1) throw usage_error("degree_bound must be positive");
    }

    /// Factor s and build the context; s must be nonconstant.
    static ModulusContext from_equation(const UniPoly& s, std::vector<Place> extra = {}, int degree_bound = 4,
                                        std::uint64_t seed = 0) {
        if (s.is_zero() || s.is_constant()) throw usage_error("modulus equation must be nonconstant");
        auto fac = factor_univariate(s);
        return ModulusContext(s.field(), fac.factors, std::move(extra), degree_bound, seed);
    }

    const PrimeField& field() const { return k_; }
    const std::vector<std::pair<UniPoly, int>>& factors() const { return factors_; }
    const UniPoly& s() const { return s_; }
    const std::vector<Place>& extra_valuations() const { return extra_; }
    int degree_bound() const { return degree_bound_; }
    std::uint64_t seed() const { return seed_; }

    Divisor divisor() const {
        Divisor d;
        for (const auto& [p, n] : factors_) d.add(Place::finite(p), n);
        return d;
    }
    /// Same field, modulus and extra valuations; bounds and seeds are not compared.
    friend bool operator==(const ModulusContext& a, const ModulusContext& b) {
        return a.k_ == b.k_ && a.factors_ == b.factors_ && a.extra_ == b.extra_;
    }

    bool on_modulus(const Place& P) const {
        if (P.is_infinity()) return false;
        for (const auto& [p, n] : factors_)
            if (p == P.poly()) return true;
        return false;
    }

private:
    PrimeField k_;
    std::vector<std::pair<UniPoly, int>> factors_;
    UniPoly s_;
    std::vector<Place> extra_;
    int degree_bound_;
    std::uint64_t seed_;
};

struct MembershipReport {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

/// f is a unit near each p_i and congruent to 1 modulo p_i^{n_i}.
inline MembershipReport is_in_G(const RatFunc& f, const ModulusContext& ctx) {
    if (f.is_zero()) throw math_error("is_in_G: zero function");
    for (const auto& [p, n] : ctx.factors()) {
        const Place P = Place::finite(p);
        const int v = valuation(P, f);
        if (v != 0) return {false, "v_" + P.to_string() + "(f) = " + std::to_string(v) + " != 0"};
        const RatFunc g = f - RatFunc::one(f.field(), f.var());
        const int w = g.is_zero() ? n : valuation(P, g);
        if (w < n)
            return {false, "v_" + P.to_string() + "(f - 1) = " + std::to_string(w) + " < " + std::to_string(n)};
    }
    return {};
}

inline bool is_in_Div_CD(const Divisor& Z, const ModulusContext& ctx) {
    for (const auto& [P, m] : Z.terms())
        if (ctx.on_modulus(P)) return false;
    return true;
}

}  // namespace suslin
