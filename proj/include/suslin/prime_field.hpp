#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace suslin {

/// Raised for malformed input: parse failures, variable mismatches, bad contexts.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a mathematical precondition is violated (zero input, element outside a set).
struct math_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when a bounded search (factorization, enumeration) would exceed its configured size.
struct DegreeBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using fe = std::uint32_t;

/// The prime field F_p, p < 2^16. Elements are canonical residues in [0, p).
class PrimeField {
public:
    PrimeField() = default;
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 2 || p >= (1u << 16)) throw usage_error("characteristic must satisfy 2 <= p < 65536");
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw usage_error("characteristic " + std::to_string(p) + " is not prime");
    }

    std::uint32_t characteristic() const { return p_; }

    fe reduce(std::int64_t v) const {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<fe>(r < 0 ? r + p_ : r);
    }
    fe add(fe a, fe b) const { fe r = a + b; return r >= p_ ? r - p_ : r; }
    fe sub(fe a, fe b) const { return a >= b ? a - b : a + p_ - b; }
    fe neg(fe a) const { return a == 0 ? 0 : p_ - a; }
    fe mul(fe a, fe b) const { return static_cast<fe>((std::uint64_t{a} * b) % p_); }
    fe pow(fe a, std::uint64_t e) const {
        fe r = 1 % p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    fe inv(fe a) const {
        if (a == 0) throw math_error("division by zero in F_p");
        return pow(a, p_ - 2);
    }
    fe div(fe a, fe b) const { return mul(a, inv(b)); }

    /// Symmetric representative in (-p/2, p/2], used for printing.
    std::int64_t signed_rep(fe a) const {
        return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_ = 2;
};

/// All randomness in the library goes through this generator type.
using Rng = std::mt19937_64;

}  // namespace suslin
