#pragma once

#include <string>
#include <vector>

#include "mfactor.hpp"
#include "mpoly.hpp"

namespace suslin {

/// Quotient of polynomials, reduced only as far as exact division allows.
struct PolyFraction {
    MPoly num;
    MPoly den;

    bool is_polynomial() const { return den.is_constant(); }
    std::string to_string() const {
        if (den.is_constant() && den.constant_value() == 1) return num.to_string();
        return "(" + num.to_string() + ")/(" + den.to_string() + ")";
    }
};

inline PolyFraction make_fraction(MPoly num, MPoly den) {
    if (den.is_zero()) throw math_error("fraction with zero denominator");
    if (auto q = exact_div(num, den)) return {*q, MPoly::constant(den.field(), den.vars(), 1)};
    // Cancel irreducible factors of the denominator that also divide the numerator.
    try {
        for (const auto& [g, m] : factor_multivariate(den).factors)
            for (int i = 0; i < m; ++i) {
                auto qn = exact_div(num, g);
                if (!qn) break;
                num = std::move(*qn);
                den = *exact_div(den, g);
            }
    } catch (const DegreeBoundExceeded&) {
    }
    const fe c = den.field().inv(den.lc());
    return {num.scale(c), den.scale(c)};
}

/// Monic minimal polynomial sum_k coeffs[k] * T^k, coefficients in the fraction field of the base variables.
struct MinimalPolynomial {
    std::vector<PolyFraction> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool has_polynomial_coefficients() const {
        for (const auto& c : coeffs)
            if (!c.is_polynomial()) return false;
        return true;
    }
    std::string to_string(const std::string& var = "T") const {
        std::string s;
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            const auto& c = coeffs[k];
            if (c.num.is_zero()) continue;
            if (!s.empty()) s += " + ";
            const std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            if (k > 0 && c.is_polynomial() && c.num.is_constant() && c.num.constant_value() == 1) s += mono;
            else s += "(" + c.to_string() + ")" + (mono.empty() ? "" : "*" + mono);
        }
        return s.empty() ? "0" : s;
    }
};

namespace detail {

/// Coefficient vector in variable z of the pseudo-remainder of g by f, padded to length deg_z f.
inline std::pair<std::vector<MPoly>, int> reduce_mod(const MPoly& g, const MPoly& f, std::size_t z) {
    auto [r, e] = pseudo_remainder(g, f, z);
    auto cs = r.coefficients_in(z);
    cs.resize(static_cast<std::size_t>(f.degree_in(z)), MPoly(f.field(), f.vars()));
    return {cs, e};
}

/// Fraction-free elimination over the given columns; returns pivot rows, one per independent column,
/// stopping at the first column that is dependent on its predecessors (reported through `dependent`).
inline std::vector<std::size_t> pivot_rows(std::vector<std::vector<MPoly>> m, std::size_t ncols, bool& dependent) {
    const std::size_t nrows = m.size();
    std::vector<std::size_t> pivots;
    std::vector<bool> used(nrows, false);
    const auto& like = m[0][0];
    MPoly prev = MPoly::constant(like.field(), like.vars(), 1);
    dependent = false;
    for (std::size_t c = 0; c < ncols; ++c) {
        std::size_t pr = nrows;
        for (std::size_t r = 0; r < nrows; ++r)
            if (!used[r] && !m[r][c].is_zero()) { pr = r; break; }
        if (pr == nrows) {
            dependent = true;
            return pivots;
        }
        used[pr] = true;
        pivots.push_back(pr);
        for (std::size_t r = 0; r < nrows; ++r) {
            if (used[r]) continue;
            for (std::size_t j = c + 1; j < ncols; ++j) {
                auto q = exact_div(m[pr][c] * m[r][j] - m[r][c] * m[pr][j], prev);
                if (!q) throw math_error("fraction-free elimination: inexact division");
                m[r][j] = std::move(*q);
            }
            m[r][c] = MPoly(like.field(), like.vars());
        }
        prev = m[pr][c];
    }
    return pivots;
}

}  // namespace detail

/// Minimal polynomial of w = w_num / w_den in the function field of the irreducible hypersurface {f = 0},
/// over the rational functions in the remaining variables; z is the variable f is treated as algebraic in.
/// Computed by finding the first linear dependency among 1, w, w^2, ... in the basis 1, z, ..., z^(d-1).
inline MinimalPolynomial minimal_polynomial(const MPoly& f, std::size_t z, const MPoly& w_num, const MPoly& w_den,
                                            bool verify_irreducible = true) {
    if (f.degree_in(z) < 1) throw math_error("minimal_polynomial: defining polynomial does not involve " + f.vars()[z]);
    if (verify_irreducible && !is_irreducible(f))
        throw math_error("minimal_polynomial: defining polynomial " + f.to_string() + " is reducible");
    if (f.divides(w_den))
        throw math_error("minimal_polynomial: denominator vanishes identically on the hypersurface");
    const auto d = static_cast<std::size_t>(f.degree_in(z));
    const MPoly lead = f.lc_in(z);
    const auto& k = f.field();

    for (std::size_t K = 1; K <= d; ++K) {
        std::vector<std::vector<MPoly>> cols;
        std::vector<int> exps;
        for (std::size_t i = 0; i <= K; ++i) {
            auto [v, e] = detail::reduce_mod(w_num.pow(static_cast<unsigned>(i)) * w_den.pow(static_cast<unsigned>(K - i)), f, z);
            cols.push_back(std::move(v));
            exps.push_back(e);
        }
        const int emax = *std::max_element(exps.begin(), exps.end());
        for (std::size_t i = 0; i <= K; ++i)
            if (exps[i] < emax)
                for (auto& c : cols[i]) c *= lead.pow(static_cast<unsigned>(emax - exps[i]));
        std::vector<std::vector<MPoly>> m(d, std::vector<MPoly>(K + 1));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c <= K; ++c) m[r][c] = cols[c][r];

        bool dependent = false;
        auto rows = detail::pivot_rows(m, K + 1, dependent);
        if (!dependent) continue;
        if (rows.size() != K) throw math_error("minimal_polynomial: powers of w became dependent early");

        std::vector<std::vector<MPoly>> sys(K, std::vector<MPoly>(K));
        for (std::size_t r = 0; r < K; ++r)
            for (std::size_t c = 0; c < K; ++c) sys[r][c] = m[rows[r]][c];
        const MPoly det = bareiss_det(sys, lead);
        MinimalPolynomial mp;
        for (std::size_t c = 0; c < K; ++c) {
            auto sc = sys;
            for (std::size_t r = 0; r < K; ++r) sc[r][c] = -m[rows[r]][K];
            mp.coeffs.push_back(make_fraction(bareiss_det(std::move(sc), lead), det));
        }
        mp.coeffs.push_back(make_fraction(MPoly::constant(k, f.vars(), 1), MPoly::constant(k, f.vars(), 1)));
        return mp;
    }
    throw math_error("minimal_polynomial: no dependency found up to the extension degree");
}

/// A triangular change of coordinates x_i -> x_i + c * z^e_i after which f has constant leading
/// coefficient in z, making k[x][z]/(f) finite over k[x].
struct NoetherShift {
    std::vector<int> exponent;  // 0 means the variable is untouched
    fe scale = 1;

    MPoly apply(const MPoly& g, std::size_t z) const {
        MPoly r = g;
        for (std::size_t i = 0; i < exponent.size(); ++i) {
            if (i == z || exponent[i] == 0) continue;
            auto xi = MPoly::variable(g.field(), g.vars(), i);
            auto zi = MPoly::variable(g.field(), g.vars(), z, exponent[i]).scale(scale);
            r = r.substitute(i, xi + zi);
        }
        return r;
    }
};

inline NoetherShift find_noether_shift(const MPoly& f, std::size_t z) {
    const std::size_t n = f.nvars();
    NoetherShift id{std::vector<int>(n, 0), 1};
    if (f.lc_in(z).is_constant()) return id;
    std::vector<std::size_t> base;
    for (std::size_t i = 0; i < n; ++i)
        if (i != z && f.involves(i)) base.push_back(i);
    const int tdeg = f.total_degree();
    const fe pmax = std::min<fe>(f.field().characteristic() - 1, 3);
    for (int e = 1; e <= tdeg + 1; ++e)
        for (std::size_t mask = 1; mask < (std::size_t{1} << base.size()); ++mask)
            for (fe c = 1; c <= pmax; ++c) {
                NoetherShift s{std::vector<int>(n, 0), c};
                for (std::size_t b = 0; b < base.size(); ++b)
                    if (mask & (std::size_t{1} << b)) s.exponent[base[b]] = e;
                if (s.apply(f, z).lc_in(z).is_constant()) return s;
            }
    // Nagata's substitution always works.
    NoetherShift s{std::vector<int>(n, 0), 1};
    int w = tdeg + 1;
    for (auto b : base) {
        s.exponent[b] = w;
        w *= tdeg + 1;
    }
    if (!s.apply(f, z).lc_in(z).is_constant()) throw math_error("Noether normalization failed");
    return s;
}

/// Whether w_num / w_den is integral over k[vars]/(f), decided by the minimal polynomial over the
/// integrally closed base after a Noether shift.
inline bool is_integral_on_hypersurface(const MPoly& f, std::size_t z, const MPoly& w_num, const MPoly& w_den,
                                        bool verify_irreducible = true) {
    const auto shift = find_noether_shift(f, z);
    const auto fs = shift.apply(f, z);
    return minimal_polynomial(fs, z, shift.apply(w_num, z), shift.apply(w_den, z), verify_irreducible)
        .has_polynomial_coefficients();
}

/// Independent integrality test through the characteristic polynomial
/// Res_z(f, T*b - a) / Res_z(f, b); requires a constant leading coefficient of f in z.
inline bool charpoly_integral(const MPoly& f, std::size_t z, const MPoly& a, const MPoly& b) {
    if (!f.lc_in(z).is_constant()) throw math_error("charpoly_integral: f must be monic in z up to a unit");
    auto vars = f.vars();
    vars.push_back("T__");
    const auto fT = f.rebase(vars), aT = a.rebase(vars), bT = b.rebase(vars);
    const auto T = MPoly::variable(f.field(), vars, vars.size() - 1);
    const auto num = resultant(fT, T * bT - aT, z);
    const auto den = resultant(fT, bT, z);
    if (den.is_zero()) throw math_error("charpoly_integral: denominator vanishes on the hypersurface");
    return den.divides(num);
}

}  // namespace suslin
