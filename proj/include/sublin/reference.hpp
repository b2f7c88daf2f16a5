#ifndef SUBLIN_REFERENCE_HPP
#define SUBLIN_REFERENCE_HPP

#include <algorithm>
#include <vector>

#include "sublin/lattice.hpp"
#include "sublin/sparsepoly.hpp"

namespace sublin {

/// Scale ceilings for the brute-force oracles; configuration, not constants,
/// so heavy sweeps can be dialed by the caller (or CLI env overrides).
struct OracleConfig {
    Int brute_roots_ceiling = 10000000;  // largest p for exhaustive evaluation
    Int brute_svp_ceiling = 100000;      // largest N for multiplier enumeration
};

inline OracleConfig& oracle_config() {
    static OracleConfig cfg;
    return cfg;
}

/// Exhaustive root set of f over F_p, sorted ascending.
inline std::vector<Int> brute_roots(const SparsePoly& f) {
    const PrimeField& field = f.field();
    if (field.p() > oracle_config().brute_roots_ceiling)
        throw capability_error("brute_roots: p exceeds the oracle ceiling");
    std::vector<Int> roots;
    // reduce exponents mod p-1 once, keeping x=0 handling separate
    std::vector<std::pair<Int, Int>> low;
    bool zero_is_root = !f.has_constant_term() && !f.is_zero();
    for (const auto& t : f.terms()) {
        Int e = t.exp == 0 ? Int(0) : Int((t.exp - 1) % (field.p() - 1) + 1);
        low.emplace_back(t.coeff, e);
    }
    SparsePoly reduced(field, low);
    if (reduced.is_zero()) {
        if (f.is_zero()) {
            for (Int x = 0; x < field.p(); ++x) roots.push_back(x);
            return roots;
        }
        // all of F_p^* vanishes
        if (zero_is_root) roots.push_back(0);
        for (Int x = 1; x < field.p(); ++x) roots.push_back(x);
        return roots;
    }
    if (zero_is_root) roots.push_back(0);
    if (detail::word_sized(field)) {
        PolyOps<Zp64> ops{Zp64(field.p())};
        const u64 p = ops.fld.p;
        std::vector<std::pair<u64, u64>> terms;
        for (const auto& [c, e] : reduced.terms())
            terms.emplace_back(mpz_get_ui(c.get_mpz_t()), mpz_get_ui(e.get_mpz_t()));
        for (u64 x = 1; x < p; ++x) {
            u64 acc = 0;
            for (const auto& [c, e] : terms) {
                // pow by squaring on word values
                u64 b = x, ee = e, r = 1;
                while (ee) {
                    if (ee & 1) r = ops.fld.mul(r, b);
                    b = ops.fld.mul(b, b);
                    ee >>= 1;
                }
                acc = ops.fld.add(acc, ops.fld.mul(c, r));
            }
            if (acc == 0) roots.push_back(Int(static_cast<unsigned long>(x)));
        }
    } else {
        for (Int x = 1; x < field.p(); ++x)
            if (reduced.eval(FieldElement(x, field)).is_zero()) roots.push_back(x);
    }
    return roots;
}

inline std::vector<Int> brute_common_roots(const std::vector<SparsePoly>& fs) {
    if (fs.empty()) throw math_error("brute_common_roots: empty list");
    std::vector<Int> acc = brute_roots(fs[0]);
    for (std::size_t i = 1; i < fs.size() && !acc.empty(); ++i) {
        std::vector<Int> next = brute_roots(fs[i]), merged;
        std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(),
                              std::back_inserter(merged));
        acc = std::move(merged);
    }
    return acc;
}

struct BruteSvp {
    Int e;
    IntVec m;
    Int norm_sq;
};

/// Direct enumeration over e in {1..N-1} of the centered-residue vectors,
/// minimizing the norm; ties go to the smallest e.
inline BruteSvp brute_multiplier_svp(const IntVec& a, const Int& N) {
    if (N > oracle_config().brute_svp_ceiling)
        throw capability_error("brute_multiplier_svp: N exceeds the oracle ceiling");
    if (a.empty() || N < 2) throw math_error("brute_multiplier_svp: bad input");
    BruteSvp best;
    best.norm_sq = -1;
    Int half = N / 2;
    for (Int e = 1; e < N; ++e) {
        Int ns = 0;
        IntVec m(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            Int mi = e * a[i] % N;
            if (mi > half) mi -= N;
            if (N % 2 == 0 && mi == -half) mi = half;
            m[i] = mi;
            ns += mi * mi;
        }
        if (ns == 0) continue;
        if (best.norm_sq == -1 || ns < best.norm_sq) {
            best = {e, m, ns};
        }
    }
    if (best.norm_sq == -1) throw math_error("brute_multiplier_svp: no nonzero multiplier vector");
    return best;
}

}  // namespace sublin

#endif
