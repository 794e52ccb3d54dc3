#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "modulus.hpp"

namespace suslin {

/// Element of Z + (k[x]/s)^x / k^x: a degree and a unit residue scaled to leading coefficient 1.
struct OracleElement {
    long degree = 0;
    UniPoly unit;

    friend bool operator==(const OracleElement&, const OracleElement&) = default;
    std::string to_string() const { return "(" + std::to_string(degree) + ", " + unit.to_string() + ")"; }
};

/// Relative Picard group of (P^1, D), computed by brute force over the residue ring.
class PicOracle {
public:
    static constexpr std::size_t kMaxResidues = std::size_t{1} << 20;

    explicit PicOracle(ModulusContext ctx) : ctx_(std::move(ctx)) {
        const auto& k = ctx_.field();
        const int n = ctx_.s().degree();
        std::size_t total = 1;
        for (int i = 0; i < n; ++i) {
            total *= k.characteristic();
            if (total > kMaxResidues) throw DegreeBoundExceeded("residue ring too large to enumerate");
        }
        // Monic representatives of degree < deg s, one per scalar class.
        for (int d = 0; d < n; ++d) {
            std::vector<fe> c(static_cast<std::size_t>(d) + 1, 0);
            c[static_cast<std::size_t>(d)] = 1;
            for (;;) {
                UniPoly u(k, c);
                if (poly_gcd(u, ctx_.s()).is_one()) {
                    index_.emplace(u.coeffs(), elements_.size());
                    elements_.push_back(u);
                }
                std::size_t i = 0;
                while (i < static_cast<std::size_t>(d) && ++c[i] == k.characteristic()) c[i++] = 0;
                if (i == static_cast<std::size_t>(d)) break;
            }
        }
        compute_structure();
    }

    const ModulusContext& context() const { return ctx_; }
    /// Order of the finite part.
    std::size_t torsion_order() const { return elements_.size(); }
    const std::vector<UniPoly>& torsion_elements() const { return elements_; }
    /// Invariant factors d_1 | d_2 | ... of the finite part (empty when it is trivial).
    const std::vector<long>& invariant_factors() const { return invariants_; }
    long order_of(const UniPoly& u) const { return orders_.at(index_.at(normalize(u).coeffs())); }

    std::string structure() const {
        std::string s = "Z";
        for (long d : invariants_) s += " + Z/" + std::to_string(d);
        return s;
    }

    UniPoly normalize(const UniPoly& u) const {
        UniPoly r = u % ctx_.s();
        if (r.is_zero()) throw math_error("not a unit modulo s");
        return r.monic();
    }
    OracleElement identity() const { return {0, UniPoly::constant(ctx_.field(), 1)}; }
    OracleElement multiply(const OracleElement& a, const OracleElement& b) const {
        return {a.degree + b.degree, normalize(a.unit * b.unit)};
    }
    OracleElement inverse(const OracleElement& a) const {
        return {-a.degree, normalize(poly_inverse_mod(a.unit, ctx_.s()))};
    }

    OracleElement theta(const Place& P) const {
        if (P.is_infinity()) return {1, UniPoly::constant(ctx_.field(), 1)};
        if (ctx_.on_modulus(P)) throw math_error("theta: place " + P.to_string() + " lies on the modulus");
        return {P.residue_degree(), normalize(P.poly())};
    }
    OracleElement theta(const Divisor& Z) const {
        OracleElement acc = identity();
        for (const auto& [P, m] : Z.terms()) {
            OracleElement t = theta(P);
            if (m < 0) t = inverse(t);
            for (int i = 0; i < std::abs(m); ++i) acc = multiply(acc, t);
        }
        return acc;
    }

    /// g in G(P^1, D) with Div(g) = Z, for Z in the kernel of theta.
    RatFunc witness_relation(const Divisor& Z) const {
        if (!(theta(Z) == identity())) throw math_error("witness_relation: theta(Z) is not trivial");
        const auto& k = ctx_.field();
        UniPoly num = UniPoly::constant(k, 1), den = UniPoly::constant(k, 1);
        for (const auto& [P, m] : Z.terms()) {
            if (P.is_infinity()) continue;
            if (m > 0) num = num * poly_pow(P.poly(), static_cast<unsigned>(m));
            else den = den * poly_pow(P.poly(), static_cast<unsigned>(-m));
        }
        const UniPoly c = (num * poly_inverse_mod(den, ctx_.s())) % ctx_.s();
        if (!c.is_constant() || c.is_zero()) throw math_error("witness_relation: residue is not a scalar");
        return RatFunc(num.scale(k.inv(c[0])), den);
    }

private:
    void compute_structure() {
        const std::size_t N = elements_.size();
        orders_.assign(N, 0);
        for (std::size_t i = 0; i < N; ++i) {
            UniPoly g = elements_[i];
            long o = 1;
            while (!g.is_one()) {
                g = normalize(g * elements_[i]);
                ++o;
            }
            orders_[i] = o;
        }
        // |G[l^j]| for each prime l dividing N gives the l-primary decomposition.
        std::map<long, std::vector<int>> primary;  // l -> exponents of cyclic factors
        long rest = static_cast<long>(N);
        for (long l = 2; rest > 1; ++l) {
            if (rest % l) continue;
            while (rest % l == 0) rest /= l;
            std::vector<long> count{1};
            for (long q = l;; q *= l) {
                long c = 0;
                for (long o : orders_)
                    if (q % o == 0) ++c;
                if (c == count.back()) break;
                count.push_back(c);
            }
            // r_j = number of cyclic factors of order >= l^j = log_l(count[j]/count[j-1])
            std::vector<int> ranks;
            for (std::size_t j = 1; j < count.size(); ++j) {
                long ratio = count[j] / count[j - 1];
                int r = 0;
                while (ratio > 1) {
                    ratio /= l;
                    ++r;
                }
                ranks.push_back(r);
            }
            auto& ex = primary[l];
            for (std::size_t j = 0; j < ranks.size(); ++j) {
                const int next = j + 1 < ranks.size() ? ranks[j + 1] : 0;
                for (int t = 0; t < ranks[j] - next; ++t) ex.push_back(static_cast<int>(j) + 1);
            }
        }
        std::size_t width = 0;
        for (auto& [l, ex] : primary) {
            std::sort(ex.begin(), ex.end(), std::greater<>());
            width = std::max(width, ex.size());
        }
        invariants_.assign(width, 1);
        for (const auto& [l, ex] : primary)
            for (std::size_t i = 0; i < ex.size(); ++i)
                for (int t = 0; t < ex[i]; ++t) invariants_[width - 1 - i] *= l;
    }

    ModulusContext ctx_;
    std::vector<UniPoly> elements_;
    std::map<std::vector<fe>, std::size_t> index_;
    std::vector<long> orders_;
    std::vector<long> invariants_;
};

}  // namespace suslin
