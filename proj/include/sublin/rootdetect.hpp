#ifndef SUBLIN_ROOTDETECT_HPP
#define SUBLIN_ROOTDETECT_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sublin/lattice.hpp"
#include "sublin/sparsepoly.hpp"

namespace sublin {

struct Coset {
    Int representative;   // element of F_p^*
    Int subgroup_order;   // the coset is representative * (order-k subgroup)
};

/// Coset description of the nonzero root set: at most ~2*eta cosets of the
/// order-s1 subgroup S1 inside the order-s2 subgroup S2, plus possibly whole
/// S2-cosets where an entire residue slice vanished.
struct RootStructure {
    bool has_root = false;
    bool root_at_zero = false;
    bool all_nonzero_roots = false;  // reduced polynomial vanished identically on F_p^*
    Int x_power_removed = 0;         // the power of x divided out up front
    Int delta = 1;                   // gcd(p-1, nonconstant exponents), accumulated
    Int N = 0;                       // (p-1)/delta
    Int e = 0;                       // lattice multiplier (0 when the path was short-circuited)
    Int delta_prime = 1;             // gcd(e, N)
    Int gamma = 0;                   // number of residue slices that did not vanish
    double eta = 0;                  // sqrt(t-1) * N^((t-2)/(t-1))
    double root_count_bound = 0;     // max{2*delta*eta, ((eta-1)/eta)(p-1)/2}
    Int s1_order = 1;
    Int s2_order = 1;
    std::vector<Coset> full_cosets;      // order-s2 cosets, every element a root
    std::vector<Coset> isolated_cosets;  // order-s1 cosets from isolated y-level roots
};

/// y-level result of the residue-slice subgroup test.
struct SubgroupDetect {
    bool has_root = false;
    Int e = 0;
    Int delta_prime = 1;
    Int gamma = 0;
    std::vector<Int> vanishing_slices;  // indices i whose slice polynomial vanished
    std::vector<Int> y_roots;           // isolated roots, elements of the order-N subgroup
    double slice_degree_bound = 0;      // 2*sqrt(t-1)*N^((t-2)/(t-1))/delta'
};

namespace detail {

inline double pow_frac(const Int& base, double num, double den) {
    signed long ex;
    double d = mpz_get_d_2exp(&ex, base.get_mpz_t());
    return std::exp2((std::log2(d) + static_cast<double>(ex)) * num / den);
}

}  // namespace detail

inline double eta_value(std::size_t t, const Int& N) {
    if (t < 2) return 1.0;
    return std::sqrt(static_cast<double>(t - 1)) *
           detail::pow_frac(N, static_cast<double>(t) - 2.0, static_cast<double>(t) - 1.0);
}

/// Lemma-style residue-slice detection: whether f (constant term nonzero,
/// exponents in (0, N) with gcd(N, exponents) = 1) has a root in the order-N
/// subgroup of F_p^*.  With collect_roots, also extracts every isolated root.
inline SubgroupDetect subgroup_root_detect(const SparsePoly& f, const Int& N, u64 seed,
                                           bool collect_roots = true) {
    const PrimeField& field = f.field();
    const Int& p = field.p();
    if (N <= 0 || (p - 1) % N != 0) throw math_error("subgroup_root_detect: N must divide p-1");
    if (!f.has_constant_term()) throw math_error("subgroup_root_detect: constant term required");
    if (f.term_count() < 2) throw math_error("subgroup_root_detect: need a nonconstant term");
    const std::size_t t = f.term_count();
    IntVec exps;
    for (std::size_t j = 1; j < t; ++j) {
        const Int& a = f.terms()[j].exp;
        if (a <= 0 || a >= N)
            throw math_error("subgroup_root_detect: exponents must lie strictly inside (0, N)");
        exps.push_back(a);
    }

    ExponentReduction red = exponent_reduce(exps, N);
    const Int& dp = red.delta_prime;
    Int Nprime = N / dp;
    Int eprime = red.e / dp;

    FieldElement sigma = find_generator(field, seed);
    FieldElement zeta = sigma.pow((p - 1) / N);  // order exactly N

    SubgroupDetect out;
    out.e = red.e;
    out.delta_prime = dp;
    out.slice_degree_bound =
        2.0 * std::sqrt(static_cast<double>(t - 1)) *
        detail::pow_frac(N, static_cast<double>(t) - 2.0, static_cast<double>(t) - 1.0) /
        dp.get_d() * (1 + 1e-9);

    for (Int i = 0; i < dp; ++i) {
        // slice polynomial f_i(z) = c_1 + sum_j c_j zeta^{a_j i} z^{m_j / delta'}
        std::vector<std::pair<Int, Int>> raw{{f.terms()[0].coeff, 0}};
        for (std::size_t j = 1; j < t; ++j)
            raw.emplace_back(f.terms()[j].coeff * zeta.pow(exps[j - 1] * i).value(),
                             red.m[j - 1] / dp);
        LaurentPoly fi(field, std::move(raw));
        if (fi.is_zero()) {
            out.vanishing_slices.push_back(i);
            out.has_root = true;
            if (!collect_roots) return out;
            continue;
        }
        out.gamma += 1;
        SparsePoly shifted = fi.normalized();  // z^{-l} f_i
        if (shifted.degree().get_d() > out.slice_degree_bound)
            throw math_error("subgroup_root_detect: slice degree exceeds the certified bound");
        if (shifted.degree() < 1) continue;  // nonzero constant: no roots in this slice
        auto [has, witness] = root_in_subgroup(shifted, Nprime);
        if (!has) continue;
        out.has_root = true;
        if (!collect_roots) return out;
        // every root of the witness lies in the order-N' subgroup; map back:
        // y = zeta^i * z0^{e/delta'}
        for (const Int& z0 : poly_roots(field, witness, seed ^ 0x5eedULL)) {
            FieldElement y = zeta.pow(i) * FieldElement(z0, field).pow(eprime);
            out.y_roots.push_back(y.value());
        }
    }
    if (out.gamma == 0 && out.vanishing_slices.empty())
        throw math_error("subgroup_root_detect: no residue slices (internal)");
    std::sort(out.y_roots.begin(), out.y_roots.end());
    out.y_roots.erase(std::unique(out.y_roots.begin(), out.y_roots.end()), out.y_roots.end());
    return out;
}

/// Headline decision procedure: does f have a root in F_p?  The nonzero roots
/// are reported as cosets; structure extraction (coset representatives) can
/// be switched off for timing-only runs.
inline RootStructure detect_root(const SparsePoly& f, u64 seed, bool want_structure = true) {
    const PrimeField& field = f.field();
    const Int& p = field.p();
    if (f.is_zero()) throw math_error("detect_root: zero polynomial");
    if (f.degree() >= p) throw math_error("detect_root: reduce exponents mod x^p - x first");

    RootStructure st;
    // constant polynomial: no roots anywhere
    if (f.degree() == 0) return st;

    // root at x = 0 and division by the lowest power of x
    SparsePoly g = f;
    if (!f.has_constant_term()) {
        st.root_at_zero = true;
        st.has_root = true;
        st.x_power_removed = f.terms().front().exp;
        std::vector<std::pair<Int, Int>> raw;
        for (const auto& tm : f.terms()) raw.emplace_back(tm.coeff, tm.exp - st.x_power_removed);
        g = SparsePoly(field, std::move(raw));
    }
    if (g.term_count() == 1) {  // c * x^{a_1}: only the zero root (if any)
        st.N = p - 1;
        st.eta = 1;
        return st;
    }

    // delta-substitution loop: divide the gcd out of the nonconstant
    // exponents, reduce mod the shrinking N, re-merge, repeat to a fixpoint.
    Int delta = 1;
    std::vector<std::pair<Int, Int>> cur;
    for (const auto& tm : g.terms()) cur.emplace_back(tm.coeff, tm.exp);
    while (true) {
        Int N = (p - 1) / delta;
        Int gg = N;
        for (const auto& [c, a] : cur)
            if (a != 0) gg = gcd(gg, a);
        if (gg > 1) {
            delta *= gg;
            N /= gg;
            for (auto& [c, a] : cur) a /= gg;
        }
        // fold exponents into [0, N): valid on the order-N subgroup
        bool changed = false;
        for (auto& [c, a] : cur)
            if (a >= N) {
                a %= N;
                changed = true;
            }
        if (changed || gg > 1) {
            SparsePoly merged(field, cur);
            cur.clear();
            for (const auto& tm : merged.terms()) cur.emplace_back(tm.coeff, tm.exp);
            if (changed) continue;  // merging may expose a new common gcd
        }
        break;
    }
    st.delta = delta;
    st.N = (p - 1) / delta;
    st.s1_order = delta;

    SparsePoly reduced(field, cur);
    const std::size_t t = reduced.term_count();
    st.eta = eta_value(t, st.N) * (1 + 1e-9);
    double half = Int(p - 1).get_d() / 2.0;
    st.root_count_bound =
        std::max(2.0 * delta.get_d() * st.eta, (st.eta - 1.0) / st.eta * half) * (1 + 1e-9);

    if (reduced.is_zero()) {
        // the y-polynomial vanishes on the whole order-N subgroup
        st.has_root = true;
        st.all_nonzero_roots = true;
        st.gamma = 0;
        st.s2_order = p - 1;
        st.full_cosets.push_back({Int(1), st.s2_order});
        return st;
    }
    if (!reduced.has_constant_term()) {
        // can only happen if the constant term cancelled during folding;
        // divide z out (z = 0 is outside the subgroup anyway)
        std::vector<std::pair<Int, Int>> raw;
        Int low = reduced.terms().front().exp;
        for (const auto& tm : reduced.terms()) raw.emplace_back(tm.coeff, tm.exp - low);
        reduced = SparsePoly(field, std::move(raw));
    }
    if (reduced.term_count() == 1) {
        st.s2_order = p - 1;
        return st;  // nonzero constant on the subgroup: no nonzero roots
    }

    // t = 2 short-circuit: c1 + c2 y^a has a subgroup root iff w = -c1/c2 is
    // an a-th power within it; gcd(N, a) = 1 here, so the criterion is just
    // membership of w in the order-N subgroup.
    if (reduced.term_count() == 2) {
        FieldElement c1(reduced.terms()[0].coeff, field), c2(reduced.terms()[1].coeff, field);
        const Int& a = reduced.terms()[1].exp;
        FieldElement w = -c1 / c2;
        st.e = 1;
        st.delta_prime = 1;
        st.gamma = 1;
        st.s2_order = p - 1;
        if (w.pow(st.N).value() != 1) return st;  // w outside the order-N subgroup
        st.has_root = true;
        if (want_structure) {
            // y0 = w^(a^{-1} mod N), then one x with x^delta = y0
            Int ainv;
            mpz_invert(ainv.get_mpz_t(), a.get_mpz_t(), st.N.get_mpz_t());
            FieldElement y0 = w.pow(ainv);
            FieldElement x0 = kth_root(y0, delta, seed);
            st.isolated_cosets.push_back({x0.value(), delta});
        }
        return st;
    }

    SubgroupDetect sub = subgroup_root_detect(reduced, st.N, seed, want_structure);
    st.e = sub.e;
    st.delta_prime = sub.delta_prime;
    st.gamma = sub.gamma;
    st.s2_order = (p - 1) / sub.delta_prime;
    st.has_root = st.has_root || sub.has_root;
    if (!want_structure) return st;

    FieldElement sigma = find_generator(field, seed);
    FieldElement zeta = sigma.pow((p - 1) / st.N);
    for (const Int& i : sub.vanishing_slices) {
        FieldElement rep = kth_root(zeta.pow(i), delta, seed);
        st.full_cosets.push_back({rep.value(), st.s2_order});
    }
    for (const Int& y : sub.y_roots) {
        FieldElement rep = kth_root(FieldElement(y, field), delta, seed);
        st.isolated_cosets.push_back({rep.value(), delta});
    }
    return st;
}

/// Expand the structure's cosets and compare against the brute root set;
/// also asserts the count and coset-count bounds.  p must be enumerable.
inline bool verify_structure(const SparsePoly& f, const RootStructure& st) {
    const PrimeField& field = f.field();
    const Int& p = field.p();
    if (p > 1000000) throw capability_error("verify_structure: p too large to enumerate");
    std::set<Int> claimed;
    if (st.root_at_zero) claimed.insert(0);
    if (st.all_nonzero_roots) {
        for (Int x = 1; x < p; ++x) claimed.insert(x);
    }
    auto expand = [&](const Coset& c) {
        // coset rep * (order-k subgroup)
        FieldElement gen = find_generator(field, 1).pow((p - 1) / c.subgroup_order);
        FieldElement cur(c.representative, field);
        for (Int j = 0; j < c.subgroup_order; ++j) {
            claimed.insert(cur.value());
            cur = cur * gen;
        }
    };
    for (const Coset& c : st.full_cosets)
        if (!st.all_nonzero_roots) expand(c);
    for (const Coset& c : st.isolated_cosets) expand(c);

    // every claimed element must actually be a root
    for (const Int& x : claimed)
        if (!f.eval(FieldElement(x, field)).is_zero()) return false;
    // exact match against exhaustive enumeration
    std::set<Int> actual;
    for (Int x = 0; x < p; ++x)
        if (f.eval(FieldElement(x, field)).is_zero()) actual.insert(x);
    if (claimed != actual) return false;
    if (st.has_root != !actual.empty()) return false;
    // count bound on nonzero roots
    double nonzero = static_cast<double>(actual.size()) - (actual.count(0) ? 1.0 : 0.0);
    if (!st.all_nonzero_roots && nonzero > st.root_count_bound) return false;
    // coset-count bound
    double cosets =
        static_cast<double>(st.full_cosets.size() + st.isolated_cosets.size());
    if (cosets > 2.0 * st.eta + 1e-9) return false;
    return true;
}

}  // namespace sublin

#endif
