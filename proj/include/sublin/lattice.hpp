#ifndef SUBLIN_LATTICE_HPP
#define SUBLIN_LATTICE_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "sublin/fp.hpp"

namespace sublin {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using Rat = mpq_class;

namespace detail {

inline Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int norm_sq(const IntVec& a) { return dot(a, a); }

inline Rat rat_round(const Rat& x) {
    // nearest integer, half rounded up
    mpz_class num = x.get_num() * 2 + x.get_den();
    mpz_class den = x.get_den() * 2;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Rat(q);
}

struct Gso {
    std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
    std::vector<Rat> B;                // squared lengths of the orthogonalized rows
};

inline Gso gram_schmidt(const IntMat& b) {
    const std::size_t r = b.size();
    Gso g;
    g.mu.assign(r, std::vector<Rat>(r, 0));
    g.B.assign(r, 0);
    std::vector<std::vector<Rat>> star(r, std::vector<Rat>(b[0].size(), 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < b[i].size(); ++k) star[i][k] = Rat(b[i][k]);
        for (std::size_t j = 0; j < i; ++j) {
            if (g.B[j] == 0) {
                g.mu[i][j] = 0;
                continue;
            }
            Rat num = 0;
            for (std::size_t k = 0; k < b[i].size(); ++k) num += Rat(b[i][k]) * star[j][k];
            g.mu[i][j] = num / g.B[j];
            for (std::size_t k = 0; k < b[i].size(); ++k) star[i][k] -= g.mu[i][j] * star[j][k];
        }
        Rat bs = 0;
        for (const Rat& v : star[i]) bs += v * v;
        g.B[i] = bs;
    }
    return g;
}

}  // namespace detail

struct LllResult {
    IntMat basis;      // reduced rows
    IntMat transform;  // unimodular U with basis = U * input
};

/// Exact LLL reduction with rational Gram-Schmidt; rows must be linearly
/// independent.
inline LllResult lll_reduce(const IntMat& input, const Rat& delta = Rat(99, 100)) {
    if (input.empty() || input[0].empty()) throw math_error("lll_reduce: empty matrix");
    if (delta <= Rat(1, 4) || delta >= 1) throw math_error("lll_reduce: delta out of (1/4, 1)");
    const std::size_t r = input.size();
    bool any = false;
    for (const auto& row : input)
        for (const auto& v : row)
            if (v != 0) any = true;
    if (!any) throw math_error("lll_reduce: zero matrix");
    IntMat b = input;
    IntMat u(r, IntVec(r, 0));
    for (std::size_t i = 0; i < r; ++i) u[i][i] = 1;

    std::size_t k = 1;
    detail::Gso g = detail::gram_schmidt(b);
    for (const Rat& bb : g.B)
        if (bb == 0) throw math_error("lll_reduce: rows are linearly dependent");
    while (k < r) {
        // size-reduce row k against rows k-1 .. 0
        bool changed = false;
        for (std::size_t j = k; j-- > 0;) {
            Rat q = detail::rat_round(g.mu[k][j]);
            if (q != 0) {
                Int qi(q.get_num());
                for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= qi * b[j][c];
                for (std::size_t c = 0; c < r; ++c) u[k][c] -= qi * u[j][c];
                changed = true;
            }
        }
        if (changed) g = detail::gram_schmidt(b);
        // Lovasz condition
        Rat lhs = g.B[k];
        Rat rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            std::swap(u[k], u[k - 1]);
            g = detail::gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return {b, u};
}

/// Row Hermite-style extraction: returns a square basis (rank x dim) of the
/// lattice generated by the input rows; requires full column rank.
inline IntMat lattice_basis(IntMat rows) {
    if (rows.empty()) throw math_error("lattice_basis: no rows");
    const std::size_t dim = rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < dim && pivot_row < rows.size(); ++col) {
        // Euclidean elimination on column col among rows >= pivot_row
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == rows.size()) break;  // column cleared below pivot
            std::swap(rows[pivot_row], rows[best]);
            bool cleared = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                           rows[pivot_row][col].get_mpz_t());
                for (std::size_t c = 0; c < dim; ++c) rows[i][c] -= q * rows[pivot_row][c];
                if (rows[i][col] != 0) cleared = false;
            }
            if (cleared) {
                ++pivot_row;
                break;
            }
        }
    }
    rows.resize(pivot_row);
    return rows;
}

/// Exact determinant of a full-rank lattice given a generating set of rows.
inline Int lattice_determinant(const IntMat& generators) {
    IntMat b = lattice_basis(generators);
    if (b.empty() || b.size() != b[0].size())
        throw math_error("lattice_determinant: lattice is not full rank");
    // Bareiss fraction-free elimination
    const std::size_t n = b.size();
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b[k][k] == 0) {
            std::size_t swp = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (b[i][k] != 0) {
                    swp = i;
                    break;
                }
            if (swp == n) return 0;
            std::swap(b[k], b[swp]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                b[i][j] = (b[i][j] * b[k][k] - b[i][k] * b[k][j]) / prev;
        prev = b[k][k];
    }
    Int d = b[n - 1][n - 1] * sign;
    return d < 0 ? Int(-d) : d;
}

struct SvpResult {
    IntVec vector;  // shortest nonzero lattice vector
    IntVec coeffs;  // integer combination of the input rows producing it
    Int norm_sq;
};

namespace detail {

constexpr std::size_t kSvpRankCeiling = 24;

struct Enumerator {
    const std::vector<std::vector<Rat>>& mu;
    const std::vector<Rat>& B;
    std::size_t r;
    Rat radius;                   // current squared-radius bound
    std::vector<IntVec> minima;   // coefficient vectors (w.r.t. reduced basis) at radius
    IntVec x;

    void run() {
        x.assign(r, 0);
        descend(r - 1, std::vector<Rat>(r, 0), Rat(0));
    }

    // layers i..r-1 fixed; centers accumulated lazily
    void descend(std::size_t i, std::vector<Rat> center_terms, Rat rho) {
        // center for layer i: -sum_{j>i} mu[j][i] x_j, accumulated in center_terms[i]
        Rat c = center_terms[i];
        Rat x0 = rat_round(c);
        // zig-zag around the center
        for (int step = 0;; ++step) {
            Rat cand = step % 2 ? Rat(x0 - Rat((step + 1) / 2)) : Rat(x0 + Rat(step / 2));
            Rat d = cand - c;
            Rat contrib = d * d * B[i];
            Rat total = rho + contrib;
            if (total > radius) {
                // zig-zag alternates sides; one side may exhaust first
                if (step % 2 == 0) {
                    // the + side exhausted; check whether - side is too
                    Rat cand2 = x0 - Rat((step + 2) / 2);
                    Rat d2 = cand2 - c;
                    if (rho + d2 * d2 * B[i] > radius) break;
                    continue;
                }
                Rat cand2 = x0 + Rat((step + 1) / 2);
                Rat d2 = cand2 - c;
                if (rho + d2 * d2 * B[i] > radius) break;
                continue;
            }
            x[i] = Int(cand.get_num());
            if (i == 0) {
                bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
                if (!zero) record(total);
            } else {
                std::vector<Rat> ct = center_terms;
                for (std::size_t j = 0; j < i; ++j) ct[j] -= mu[i][j] * cand;
                descend(i - 1, std::move(ct), total);
            }
        }
        x[i] = 0;
    }

    void record(const Rat& total) {
        if (total < radius) {
            radius = total;
            minima.clear();
        }
        if (total == radius) minima.push_back(x);
    }
};

}  // namespace detail

/// Exact shortest nonzero vector by LLL preprocessing + enumeration; ties
/// broken by the lexicographically smallest coefficient vector whose first
/// nonzero entry is positive.
inline SvpResult svp_exact(const IntMat& basis) {
    if (basis.empty()) throw math_error("svp_exact: empty basis");
    if (basis.size() > detail::kSvpRankCeiling)
        throw capability_error("svp_exact: dimension too large");
    LllResult lll = lll_reduce(basis);
    detail::Gso g = detail::gram_schmidt(lll.basis);
    const std::size_t r = basis.size();
    Rat init = Rat(detail::norm_sq(lll.basis[0]));
    for (std::size_t i = 1; i < r; ++i) init = std::min(init, Rat(detail::norm_sq(lll.basis[i])));
    detail::Enumerator en{g.mu, g.B, r, init, {}, {}};
    en.run();
    if (en.minima.empty()) throw math_error("svp_exact: enumeration found nothing");
    // map coefficients back to the input rows and collect candidates
    std::vector<IntVec> cands;
    for (const IntVec& xr : en.minima) {
        IntVec c(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) c[j] += xr[i] * lll.transform[i][j];
        // canonical sign: first nonzero coefficient positive
        for (const Int& v : c) {
            if (v == 0) continue;
            if (v < 0)
                for (Int& w : c) w = -w;
            break;
        }
        cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    const IntVec& best = cands.front();
    IntVec v(basis[0].size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += best[j] * basis[j][c];
    return {v, best, detail::norm_sq(v)};
}

/// The (s+1) x s exponent lattice: first row the exponents, then N * e_i.
inline IntMat exponent_lattice(const IntVec& a, const Int& N) {
    const std::size_t s = a.size();
    IntMat rows(s + 1, IntVec(s, 0));
    rows[0] = a;
    for (std::size_t i = 0; i < s; ++i) rows[i + 1][i] = N;
    return rows;
}

struct ExponentReduction {
    Int e;            // multiplier in [1, N)
    IntVec m;         // centered residues of e * a_i, |m_i| <= N/2
    Int norm_sq;      // exact squared Euclidean length of m
    Int delta_prime;  // gcd(e, N)
    double bound;     // sqrt(s) * N^(1 - 1/s), rounded outward
};

namespace detail {

inline double minkowski_bound(std::size_t s, const Int& N) {
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, N.get_mpz_t());
    double log2N = std::log2(d) + static_cast<double>(exp2);
    double log2b = 0.5 * std::log2(static_cast<double>(s)) +
                   (1.0 - 1.0 / static_cast<double>(s)) * log2N;
    return std::exp2(log2b) * (1 + 1e-9);
}

}  // namespace detail

/// Exact certificate check (norm^2)^s <= s^s * N^(2s-2), equivalent to
/// ||m|| <= sqrt(s) * N^(1-1/s) without any rounding.
inline bool minkowski_certificate(const Int& norm_sq, std::size_t s, const Int& N) {
    Int lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), norm_sq.get_mpz_t(), s);
    mpz_pow_ui(rhs.get_mpz_t(), N.get_mpz_t(), 2 * s - 2);
    Int ss;
    mpz_ui_pow_ui(ss.get_mpz_t(), s, s);
    return lhs <= rhs * ss;
}

/// Lemma-style exponent reduction: the smallest multiplier e (ties on the
/// minimal lattice norm) with every centered residue m_i = e*a_i mod N small.
inline ExponentReduction exponent_reduce(const IntVec& a, const Int& N) {
    const std::size_t s = a.size();
    if (s == 0) throw math_error("exponent_reduce: empty exponent list");
    Int g = N;
    for (const Int& ai : a) {
        if (ai <= 0 || ai >= N) throw math_error("exponent_reduce: exponents must lie in (0, N)");
        g = gcd(g, ai);
    }
    for (std::size_t i = 1; i < s; ++i)
        if (a[i] <= a[i - 1]) throw math_error("exponent_reduce: exponents must increase");
    if (g != 1)
        throw math_error("exponent_reduce: gcd(N, exponents) != 1; divide out the common part first");

    IntMat square = lattice_basis(exponent_lattice(a, N));
    SvpResult svp = svp_exact(square);

    // recover e from the shortest vector: with c0*N + sum c_i a_i = 1,
    // any lattice vector m has m_i = e*a_i mod N for e = sum c_i m_i mod N.
    // Collect every shortest vector's e (both signs) and keep the smallest.
    auto e_of = [&](const IntVec& m) -> Int {
        // incremental extended gcd: run_k = cN*N + sum cs_i a_i = gcd(N, a_1..a_k)
        std::vector<Int> cs(s, 0);
        Int cN = 1, run = N;
        for (std::size_t i = 0; i < s; ++i) {
            Int u, v, gg;
            mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), run.get_mpz_t(),
                       a[i].get_mpz_t());
            cN *= u;
            for (std::size_t j = 0; j < i; ++j) cs[j] *= u;
            cs[i] = v;
            run = gg;
        }
        Int e = 0;
        for (std::size_t i = 0; i < s; ++i) e += cs[i] * m[i];
        e %= N;
        if (e < 0) e += N;
        return e;
    };
    IntVec mv = svp.vector;
    Int e1 = e_of(mv);
    IntVec neg(mv.size());
    for (std::size_t i = 0; i < mv.size(); ++i) neg[i] = -mv[i];
    Int e2 = e_of(neg);
    Int e = std::min(e1 == 0 ? N : e1, e2 == 0 ? N : e2);
    if (e == N)
        throw math_error("exponent_reduce: shortest vector has multiplier 0 (degenerate)");

    // centered residues in [-floor(N/2), ceil(N/2)], +N/2 preferred for even N
    IntVec m(s);
    Int norm_sq = 0;
    Int half = N / 2;
    for (std::size_t i = 0; i < s; ++i) {
        Int mi = e * a[i] % N;
        if (mi > half) mi -= N;
        if (N % 2 == 0 && mi == -half) mi = half;
        m[i] = mi;
        norm_sq += mi * mi;
    }
    if (norm_sq != svp.norm_sq)
        throw math_error("exponent_reduce: internal certificate mismatch");
    if (!minkowski_certificate(norm_sq, s, N))
        throw math_error("exponent_reduce: Minkowski bound violated");
    return {e, m, norm_sq, gcd(e, N), detail::minkowski_bound(s, N)};
}

}  // namespace sublin

#endif
