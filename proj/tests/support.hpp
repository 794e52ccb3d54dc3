#pragma once

// Shorthands and independent oracles shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "suslin/all.hpp"

namespace testing_support {

using namespace suslin;

inline UniPoly U(const std::string& text, std::uint32_t p, const std::string& var = "x") {
    return parse_unipoly(text, PrimeField(p), var);
}
inline MPoly M(const std::string& text, std::uint32_t p, std::vector<std::string> vars) {
    return parse_mpoly(text, PrimeField(p), std::move(vars));
}
inline RatFunc R(const std::string& text, std::uint32_t p) { return parse_ratfunc(text, PrimeField(p)); }
inline TPoly T(const std::string& text, std::uint32_t p, std::size_t n = 0) {
    return n ? parse_cube(text, PrimeField(p), n) : parse_cube(text, PrimeField(p));
}
inline Place Pl(const std::string& text, std::uint32_t p) { return Place::checked(U(text, p)); }

inline ModulusContext ctx(std::uint32_t p, const std::string& s) { return ModulusContext::from_equation(U(s, p)); }

inline UniPoly random_poly(const PrimeField& k, int deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(k.characteristic()) - 1);
    std::vector<fe> c(static_cast<std::size_t>(deg + 1));
    for (auto& a : c) a = static_cast<fe>(d(rng));
    return UniPoly(k, std::move(c));
}

/// All monic polynomials of the given degree.
inline std::vector<UniPoly> monics(const PrimeField& k, int deg) {
    std::vector<UniPoly> out;
    const auto p = k.characteristic();
    std::vector<fe> c(static_cast<std::size_t>(deg + 1), 0);
    c.back() = 1;
    for (;;) {
        out.emplace_back(k, c);
        std::size_t i = 0;
        while (i < static_cast<std::size_t>(deg) && ++c[i] == p) c[i++] = 0;
        if (i == static_cast<std::size_t>(deg)) break;
    }
    return out;
}

/// Irreducibility by trial division when the search is small, else Rabin's test.
inline bool irreducible_oracle(const UniPoly& f) {
    const auto& k = f.field();
    const int n = f.degree();
    if (n < 1) return false;
    double work = 0;
    for (int d = 1; 2 * d <= n; ++d) work += std::pow(double(k.characteristic()), d);
    if (work < 4000) {
        for (int d = 1; 2 * d <= n; ++d)
            for (const auto& g : monics(k, d))
                if (g.divides(f)) return false;
        return true;
    }
    const UniPoly x = UniPoly::monomial(k, 1);
    auto frob = [&](int times) {
        UniPoly r = x;
        for (int i = 0; i < times; ++i) r = poly_powmod(r, k.characteristic(), f);
        return r;
    };
    if (!((frob(n) - x) % f).is_zero()) return false;
    for (int q = 2; q <= n; ++q) {
        bool prime = true;
        for (int r = 2; r * r <= q; ++r) prime = prime && q % r;
        if (!prime || n % q) continue;
        if (!poly_gcd(frob(n / q) - x, f).is_constant()) return false;
    }
    return true;
}

}  // namespace testing_support
