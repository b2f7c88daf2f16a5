#ifndef SUBLIN_BENCH_HPP
#define SUBLIN_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "sublin/rootdetect.hpp"

namespace sublin {

struct BenchRow {
    Int q;
    unsigned t = 3;
    Int delta = 1;
    long long time_detect_ns = 0;
    long long time_brute_ns = -1;  // -1: skipped above the cutoff
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double e_hat = 0;  // log-log fitted exponent of detect time vs q
};

/// Random t-nomial with constant term and delta = gcd(q-1, exponents) forced
/// to 1, so detection exercises the sub-linear path rather than the
/// substitution shortcut.
inline SparsePoly bench_instance(const PrimeField& F, unsigned t, Rng& rng) {
    const Int& p = F.p();
    while (true) {
        std::vector<std::pair<Int, Int>> raw{{rng.in_range(1, p), 0}};
        Int g = p - 1;
        for (unsigned i = 1; i < t; ++i) {
            Int a = rng.in_range(1, p - 1);
            g = gcd(g, a);
            raw.emplace_back(rng.in_range(1, p), a);
        }
        if (g != 1) continue;
        SparsePoly f(F, raw);
        if (f.term_count() == t && f.has_constant_term()) return f;
    }
}

/// Generator-walk enumeration of F_p^*: x runs over powers of a generator and
/// each term c_i x^{a_i} is updated by one word multiplication per step;
/// early exit on a root. Requires a word-sized p.
inline bool brute_walk_has_root(const SparsePoly& f, u64 seed) {
    const PrimeField& F = f.field();
    if (!F.p().fits_ulong_p()) throw capability_error("brute_walk_has_root: p exceeds a word");
    const u64 p = mpz_get_ui(F.p().get_mpz_t());
    FieldElement gen = find_generator(F, seed);
    const std::size_t t = f.term_count();
    std::vector<u64> val(t), step(t);
    for (std::size_t i = 0; i < t; ++i) {
        val[i] = mpz_get_ui(f.terms()[i].coeff.get_mpz_t());
        step[i] = mpz_get_ui(gen.pow(f.terms()[i].exp).value().get_mpz_t());
    }
    for (u64 k = 0; k < p - 1; ++k) {
        u64 acc = 0;
        for (std::size_t i = 0; i < t; ++i) {
            acc += val[i];
            if (acc >= p) acc -= p;
            val[i] = static_cast<u64>((__uint128_t)val[i] * step[i] % p);
        }
        if (acc == 0) return true;
    }
    return false;
}

/// Median-of-trials wall times for decision-only detection (and, below the
/// cutoff, the brute generator walk) on random delta = 1 instances.
inline BenchResult run_bench(unsigned t, const std::vector<Int>& qs, unsigned trials, u64 seed,
                             const Int& brute_cutoff) {
    using clock = std::chrono::steady_clock;
    BenchResult out;
    for (const Int& q : qs) {
        if (!is_probable_prime(q))
            throw math_error("bench: q = " + q.get_str() + " is not prime");
        PrimeField F{q};
        Rng rng(seed ^ mpz_get_ui(q.get_mpz_t()));
        std::vector<long long> det_ns, bru_ns;
        for (unsigned trial = 0; trial < trials; ++trial) {
            SparsePoly f = bench_instance(F, t, rng);
            auto t0 = clock::now();
            RootStructure st = detect_root(f, seed + trial, /*want_structure=*/false);
            auto t1 = clock::now();
            (void)st;
            det_ns.push_back(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
            if (q <= brute_cutoff) {
                auto b0 = clock::now();
                volatile bool r = brute_walk_has_root(f, seed + trial);
                auto b1 = clock::now();
                (void)r;
                bru_ns.push_back(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(b1 - b0).count());
            }
        }
        auto median = [](std::vector<long long> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        out.rows.push_back({q, t, 1, median(det_ns), bru_ns.empty() ? -1 : median(bru_ns)});
    }
    if (out.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const BenchRow& r : out.rows) {
            double x = std::log(r.q.get_d());
            double y = std::log(static_cast<double>(std::max(r.time_detect_ns, 1LL)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double n = static_cast<double>(out.rows.size());
        out.e_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return out;
}

}  // namespace sublin

#endif
