#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpoly.hpp"

namespace suslin {

/// A quotient of two polynomials as written in text; no cancellation is performed.
struct ParsedFraction {
    MPoly num;
    MPoly den;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, PrimeField k, std::vector<std::string> vars)
        : s_(text), k_(k), vars_(std::move(vars)) {}

    ParsedFraction parse() {
        auto r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw usage_error("polynomial parse error at offset " + std::to_string(pos_) + ": " + why + " in \"" +
                          std::string(s_) + "\"");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    MPoly one() const { return MPoly::constant(k_, vars_, 1); }

    static ParsedFraction add(const ParsedFraction& a, const ParsedFraction& b, bool minus) {
        if (a.den == b.den) return {minus ? a.num - b.num : a.num + b.num, a.den};
        auto l = a.num * b.den, r = b.num * a.den;
        return {minus ? l - r : l + r, a.den * b.den};
    }

    ParsedFraction expr() {
        ParsedFraction acc{MPoly(k_, vars_), one()};
        bool first = true;
        for (;;) {
            bool minus = false;
            if (eat('-')) minus = true;
            else if (eat('+')) minus = false;
            else if (!first) break;
            acc = add(acc, term(), minus);
            first = false;
        }
        return acc;
    }
    ParsedFraction term() {
        auto acc = factor();
        for (;;) {
            if (eat('*')) {
                auto f = factor();
                acc = {acc.num * f.num, acc.den * f.den};
            } else if (eat('/')) {
                auto f = factor();
                if (f.num.is_zero()) fail("division by zero");
                acc = {acc.num * f.den, acc.den * f.num};
            } else {
                return acc;
            }
        }
    }
    ParsedFraction factor() {
        auto base = primary();
        if (eat('^')) {
            skip_ws();
            const auto e = integer();
            if (e > 10000) fail("exponent too large");
            base = {base.num.pow(static_cast<unsigned>(e)), base.den.pow(static_cast<unsigned>(e))};
        }
        return base;
    }
    unsigned long long integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        unsigned long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_++] - '0');
            if (v > (1ull << 40)) fail("integer literal too large");
        }
        return v;
    }
    ParsedFraction primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto v = integer();
            if (v >= k_.characteristic())
                fail("coefficient " + std::to_string(v) + " is not a residue modulo " +
                     std::to_string(k_.characteristic()));
            return {MPoly::constant(k_, vars_, static_cast<fe>(v)), one()};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name += s_[pos_++];
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) fail("unknown variable '" + name + "'");
            return {MPoly::variable(k_, vars_, static_cast<std::size_t>(it - vars_.begin())), one()};
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    PrimeField k_;
    std::vector<std::string> vars_;
};

}  // namespace detail

/// Identifiers occurring in a polynomial text, in order of first appearance.
inline std::vector<std::string> variables_in(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::string name;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                name += text[i++];
            if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
        } else {
            ++i;
        }
    }
    return out;
}

inline ParsedFraction parse_fraction(std::string_view text, PrimeField k, std::vector<std::string> vars) {
    return detail::PolyParser(text, k, std::move(vars)).parse();
}

/// Parse a polynomial; a division is accepted only when it is exact.
inline MPoly parse_mpoly(std::string_view text, PrimeField k, std::vector<std::string> vars) {
    auto f = parse_fraction(text, k, std::move(vars));
    auto q = exact_div(f.num, f.den);
    if (!q) throw usage_error("expression is not a polynomial: " + std::string(text));
    return *q;
}

inline UniPoly parse_unipoly(std::string_view text, PrimeField k, const std::string& var = "x") {
    return parse_mpoly(text, k, {var}).to_uni(0);
}

}  // namespace suslin
