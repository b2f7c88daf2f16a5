#ifndef SUBLIN_RESULTANT_HPP
#define SUBLIN_RESULTANT_HPP

#include <vector>

#include "sublin/sparsepoly.hpp"

namespace sublin {

/// (d+d') x (d+d') Sylvester matrix in the ascending-coefficient layout:
/// d' staggered rows of f (declared degree d) above d staggered rows of g
/// (declared degree d').
struct SylvesterMatrix {
    std::size_t d, d_prime;
    std::vector<std::vector<Int>> entries;

    SylvesterMatrix(const PrimeField& field, const DensePoly& f, const DensePoly& g,
                    std::size_t dd, std::size_t ddp)
        : d(dd), d_prime(ddp) {
        if (f.size() > d + 1 || g.size() > d_prime + 1)
            throw math_error("SylvesterMatrix: polynomial exceeds its declared degree");
        Int fd = f.size() == d + 1 ? f[d] : Int(0);
        Int gd = g.size() == d_prime + 1 ? g[d_prime] : Int(0);
        if (fd % field.p() == 0 && gd % field.p() == 0)
            throw math_error("SylvesterMatrix: both declared leading coefficients are zero");
        const std::size_t n = d + d_prime;
        entries.assign(n, std::vector<Int>(n, 0));
        for (std::size_t i = 0; i < d_prime; ++i)
            for (std::size_t j = 0; j <= d; ++j)
                entries[i][i + j] = j < f.size() ? f[j] % field.p() : Int(0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j <= d_prime; ++j)
                entries[d_prime + i][i + j] = j < g.size() ? g[j] % field.p() : Int(0);
    }
};

/// det of the Sylvester matrix over F_p (Gaussian elimination with field
/// inverses; exact).
inline FieldElement sylvester_resultant(const PrimeField& field, const DensePoly& f,
                                        const DensePoly& g, std::size_t d, std::size_t d_prime) {
    if (d == 0 && d_prime == 0) return FieldElement(1, field);  // empty determinant
    SylvesterMatrix S(field, f, g, d, d_prime);
    std::vector<std::vector<Int>> m = S.entries;
    const std::size_t n = m.size();
    const Int& p = field.p();
    FieldElement det(1, field);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
            if (m[r][col] % p != 0) {
                piv = r;
                break;
            }
        if (piv == n) return FieldElement(0, field);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        FieldElement pv(m[col][col], field);
        det = det * pv;
        FieldElement inv = pv.inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] % p == 0) continue;
            Int factor = (FieldElement(m[r][col], field) * inv).value();
            for (std::size_t c = col; c < n; ++c)
                m[r][c] = ((m[r][c] - factor * m[col][c]) % p + p) % p;
        }
    }
    return det;
}

/// Exponent-set-aware discriminant: normalize exponents to
/// a-bar_i = (a_i - a_1)/g, then res(f-bar, f-bar' / x^{a-bar_2 - 1})
/// divided by c_t^{a-bar_t - a-bar_{t-1}}.
inline FieldElement a_discriminant(const SparsePoly& f) {
    const PrimeField& field = f.field();
    const std::size_t t = f.term_count();
    if (t < 2) throw math_error("a_discriminant: need at least two terms");
    const auto& terms = f.terms();
    Int a1 = terms[0].exp;
    Int g = 0;
    for (std::size_t i = 1; i < t; ++i) g = gcd(g, terms[i].exp - a1);
    std::vector<Int> abar(t);
    for (std::size_t i = 0; i < t; ++i) abar[i] = (terms[i].exp - a1) / g;
    if (!abar.back().fits_ulong_p())
        throw capability_error("a_discriminant: normalized degree too large for a dense resultant");

    // f-bar and the exactly-divided derivative
    std::vector<std::pair<Int, Int>> fbar_raw, deriv_raw;
    for (std::size_t i = 0; i < t; ++i) fbar_raw.emplace_back(terms[i].coeff, abar[i]);
    for (std::size_t i = 1; i < t; ++i)
        deriv_raw.emplace_back(terms[i].coeff * (abar[i] % field.p()), abar[i] - abar[1]);
    SparsePoly fbar(field, fbar_raw), deriv(field, deriv_raw);
    if (deriv.is_zero())
        throw math_error("a_discriminant: inseparable case (derivative vanishes mod p)");

    std::size_t d = mpz_get_ui(abar.back().get_mpz_t());
    std::size_t dp = mpz_get_ui(Int(abar.back() - abar[1]).get_mpz_t());
    FieldElement res = sylvester_resultant(field, to_dense(fbar), to_dense(deriv), d, dp);
    FieldElement ct(terms.back().coeff, field);
    return res / ct.pow(abar[t - 1] - abar[t - 2]);
}

/// Closed-form trinomial discriminant of c1 + c2 x^{a2} + c3 x^{a3},
/// gcd(a2, a3) = 1; O(log a3) multiplications.
inline FieldElement trinomial_discriminant(const FieldElement& c1, const FieldElement& c2,
                                           const FieldElement& c3, const Int& a2, const Int& a3) {
    if (!(0 < a2 && a2 < a3)) throw math_error("trinomial_discriminant: need 0 < a2 < a3");
    if (gcd(a2, a3) != 1)
        throw math_error("trinomial_discriminant: gcd(a2, a3) != 1; normalize the exponents first");
    if (c1.is_zero() || c3.is_zero())
        throw math_error("trinomial_discriminant: c1 and c3 must be nonzero");
    const PrimeField& field = c1.field();
    FieldElement d32(a3 - a2, field), fa2(a2, field), na3(-Int(a3), field);
    FieldElement left = d32.pow(a3 - a2) * fa2.pow(a2) * c2.pow(a3);
    FieldElement right = na3.pow(a3) * c1.pow(a3 - a2) * c3.pow(a2);
    return left - right;
}

struct DegenerateRoot {
    enum Kind { none, in_field, in_extension } kind = none;
    Int zeta = 0;  // meaningful only for in_field
};

/// When the trinomial discriminant vanishes, recover the degenerate root from
/// (zeta^{a2}, zeta^{a3}) = c1/(a3-a2) * (-a3/c2, a2/c3) via a Bezout
/// combination; verify membership in F_p.
inline DegenerateRoot trinomial_degenerate_root(const FieldElement& c1, const FieldElement& c2,
                                                const FieldElement& c3, const Int& a2,
                                                const Int& a3) {
    const PrimeField& field = c1.field();
    if ((a3 % field.p() == 0) || ((a3 - a2) % field.p() == 0))
        throw math_error("trinomial_degenerate_root: inseparable case (p divides a3(a3-a2))");
    FieldElement delta = trinomial_discriminant(c1, c2, c3, a2, a3);
    if (!delta.is_zero()) return {};
    // delta = 0 forces c2 != 0 here: otherwise delta reduces to the (nonzero)
    // right-hand product, given the separability preconditions
    FieldElement scale = c1 / FieldElement(a3 - a2, field);
    FieldElement u = scale * (-FieldElement(a3, field) / c2);  // zeta^{a2}
    FieldElement v = scale * (FieldElement(a2, field) / c3);   // zeta^{a3}
    Int alpha, beta, g;
    mpz_gcdext(g.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t(), a2.get_mpz_t(),
               a3.get_mpz_t());
    if (u.is_zero() || v.is_zero()) return {DegenerateRoot::in_extension, 0};
    FieldElement zeta = u.pow(alpha) * v.pow(beta);
    // verify f(zeta) = f'(zeta) = 0 in F_p
    FieldElement fz = c1 + c2 * zeta.pow(a2) + c3 * zeta.pow(a3);
    FieldElement dz = c2 * FieldElement(a2, field) * zeta.pow(a2 - 1) +
                      c3 * FieldElement(a3, field) * zeta.pow(a3 - 1);
    if (fz.is_zero() && dz.is_zero()) return {DegenerateRoot::in_field, zeta.value()};
    return {DegenerateRoot::in_extension, 0};
}

}  // namespace sublin

#endif
