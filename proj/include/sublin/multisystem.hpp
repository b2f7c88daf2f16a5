#ifndef SUBLIN_MULTISYSTEM_HPP
#define SUBLIN_MULTISYSTEM_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "sublin/rootdetect.hpp"

namespace sublin {

struct CommonFactorResult {
    bool exists = false;
    DensePoly witness_gcd;  // in the reduced z-domain; {0,1} encodes the factor x
    Int delta = 1;
    Int delta_prime = 1;
};

/// Whether k sparse polynomials share a degree-one factor over F_p[x]
/// (equivalently a common root in F_p), via one exponent reduction over the
/// concatenated exponent list.
inline CommonFactorResult common_linear_factor(const std::vector<SparsePoly>& fs, u64 seed) {
    if (fs.empty()) throw math_error("common_linear_factor: empty list");
    const PrimeField& field = fs.front().field();
    const Int& p = field.p();
    for (const auto& f : fs) {
        if (!f.field().same_as(field)) throw math_error("common_linear_factor: field mismatch");
        if (f.is_zero()) throw math_error("common_linear_factor: zero polynomial in the list");
    }
    CommonFactorResult out;

    // the factor x: common iff every constant term is absent
    if (std::all_of(fs.begin(), fs.end(),
                    [](const SparsePoly& f) { return !f.has_constant_term(); })) {
        out.exists = true;
        out.witness_gcd = {0, 1};
        return out;
    }

    // strip each polynomial's lowest power of x; drop none, but a polynomial
    // collapsing to a nonzero constant kills all nonzero common roots
    std::vector<std::vector<std::pair<Int, Int>>> polys;
    for (const auto& f : fs) {
        Int low = f.terms().front().exp;
        std::vector<std::pair<Int, Int>> raw;
        for (const auto& tm : f.terms()) raw.emplace_back(tm.coeff, tm.exp - low);
        if (raw.size() == 1) return out;  // c * x^a: no nonzero roots
        polys.push_back(std::move(raw));
    }

    // shared delta-substitution over the concatenated exponent list
    Int delta = 1;
    while (true) {
        Int N = (p - 1) / delta;
        Int gg = N;
        for (const auto& raw : polys)
            for (const auto& [c, a] : raw)
                if (a != 0) gg = gcd(gg, a);
        bool changed = false;
        if (gg > 1) {
            delta *= gg;
            N /= gg;
            for (auto& raw : polys)
                for (auto& [c, a] : raw) a /= gg;
        }
        for (auto& raw : polys)
            for (auto& [c, a] : raw)
                if (a >= N) {
                    a %= N;
                    changed = true;
                }
        if (changed || gg > 1) {
            for (auto& raw : polys) {
                SparsePoly merged(field, raw);
                raw.clear();
                for (const auto& tm : merged.terms()) raw.emplace_back(tm.coeff, tm.exp);
            }
            if (changed) continue;
        }
        break;
    }
    out.delta = delta;
    const Int N = (p - 1) / delta;

    // per-polynomial degeneracies after folding
    std::vector<SparsePoly> reduced;
    for (auto& raw : polys) {
        SparsePoly f(field, raw);
        if (f.is_zero()) continue;  // vanishes on the whole subgroup: no constraint
        if (!f.has_constant_term()) {
            Int low = f.terms().front().exp;
            std::vector<std::pair<Int, Int>> shifted;
            for (const auto& tm : f.terms()) shifted.emplace_back(tm.coeff, tm.exp - low);
            f = SparsePoly(field, shifted);
        }
        if (f.term_count() == 1) return out;  // nonzero constant on the subgroup
        reduced.push_back(std::move(f));
    }
    if (reduced.empty()) {  // every polynomial vanished identically on the subgroup
        out.exists = true;
        return out;
    }

    // concatenated exponent list (sorted, unique)
    std::vector<Int> exps;
    for (const auto& f : reduced)
        for (std::size_t j = 1; j < f.term_count(); ++j) exps.push_back(f.terms()[j].exp);
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    const std::size_t T = exps.size();

    if (N == 1) {
        // the subgroup is {1}: just evaluate
        bool all1 = std::all_of(reduced.begin(), reduced.end(), [&](const SparsePoly& f) {
            return f.eval(FieldElement(1, field)).is_zero();
        });
        out.exists = all1;
        return out;
    }

    ExponentReduction red = exponent_reduce(exps, N);
    out.delta_prime = red.delta_prime;
    const Int& dp = red.delta_prime;
    Int Nprime = N / dp;
    std::map<Int, Int> mval;
    for (std::size_t j = 0; j < T; ++j) mval[exps[j]] = red.m[j];

    const double degree_bound =
        2.0 * std::sqrt(static_cast<double>(T)) *
        detail::pow_frac(p, static_cast<double>(T) - 1.0, static_cast<double>(T)) *
        (1 + 1e-9);

    FieldElement sigma = find_generator(field, seed);
    FieldElement zeta = sigma.pow((p - 1) / N);

    for (Int i = 0; i < dp; ++i) {
        std::vector<SparsePoly> slices;
        bool all_vanish = true;
        bool skip = false;
        for (const auto& f : reduced) {
            std::vector<std::pair<Int, Int>> raw{{f.terms()[0].coeff, 0}};
            for (std::size_t j = 1; j < f.term_count(); ++j) {
                const Int& a = f.terms()[j].exp;
                raw.emplace_back(f.terms()[j].coeff * zeta.pow(a * i).value(), mval[a] / dp);
            }
            LaurentPoly li(field, std::move(raw));
            if (li.is_zero()) continue;  // this polynomial allows the whole coset
            all_vanish = false;
            SparsePoly s = li.normalized();
            if (s.degree().get_d() > degree_bound)
                throw math_error("common_linear_factor: reduced degree exceeds the bound");
            if (s.degree() < 1) {
                skip = true;  // a nonzero constant on this coset: no roots here
                break;
            }
            slices.push_back(std::move(s));
        }
        if (skip) continue;
        if (all_vanish) {
            out.exists = true;
            return out;
        }
        DensePoly g = to_dense(slices[0]);
        for (std::size_t l = 1; l < slices.size() && g.size() > 1; ++l)
            g = poly_gcd(field, g, to_dense(slices[l]));
        if (g.size() < 2) continue;
        auto [has, witness] = root_in_subgroup(from_dense(field, g), Nprime);
        if (has) {
            out.exists = true;
            out.witness_gcd = witness;
            return out;
        }
    }
    return out;
}

struct LinearCombineResult {
    DensePoly f1;
    DensePoly combined;
    std::vector<Int> u;  // u_2 .. u_k
    bool degree_warning = false;  // d/p > 1/4: the 1 - d/p guarantee is weak
};

/// Collapse f_2 .. f_k into one random combination; preserves the common
/// root set with probability >= 1 - d/p over the draw.
inline LinearCombineResult random_linear_combine(const std::vector<DensePoly>& fs,
                                                 const PrimeField& field, u64 seed) {
    if (fs.size() < 2) throw math_error("random_linear_combine: need at least two polynomials");
    Rng rng(seed);
    LinearCombineResult out;
    out.f1 = fs[0];
    std::size_t d = 0;
    for (const auto& f : fs) d = std::max(d, f.size() > 0 ? f.size() - 1 : 0);
    out.degree_warning = Int(static_cast<unsigned long>(d)) * 4 > field.p();
    DensePoly acc;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        Int ui = rng.below(field.p());
        out.u.push_back(ui);
        DensePoly scaled(fs[i].size());
        for (std::size_t j = 0; j < fs[i].size(); ++j) scaled[j] = fs[i][j] * ui % field.p();
        if (acc.size() < scaled.size()) acc.resize(scaled.size(), 0);
        for (std::size_t j = 0; j < scaled.size(); ++j) acc[j] = (acc[j] + scaled[j]) % field.p();
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    out.combined = std::move(acc);
    return out;
}

struct PairGadget {
    DensePoly F;  // f1^2 - chi * f2^2
    Int chi;
};

/// F vanishes at x in F_p exactly when both f1 and f2 do (chi a nonresidue).
inline PairGadget pair_to_single_gadget(const DensePoly& f1, const DensePoly& f2,
                                        const PrimeField& field, u64 seed) {
    FieldElement chi = find_quadratic_nonresidue(field, seed);
    DensePoly a = poly_mul(field, f1, f1);
    DensePoly b = poly_mul(field, f2, f2);
    DensePoly F(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) F[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        F[i] = ((F[i] - chi.value() * b[i]) % field.p() + field.p()) % field.p();
    while (!F.empty() && F.back() == 0) F.pop_back();
    return {F, chi.value()};
}

struct SquareGadget {
    DensePoly H;  // (f + a g)(f + b g)
    Int a, b;
};

/// H has a repeated factor when f and g share a root in the closure; for
/// coprime f, g it is squarefree with high probability over the draw of a, b.
inline SquareGadget square_gadget(const DensePoly& f, const DensePoly& g,
                                  const PrimeField& field, u64 seed) {
    Rng rng(seed);
    Int a = rng.below(field.p());
    Int b = rng.below(field.p());
    while (b == a) b = rng.below(field.p());
    auto shifted = [&](const Int& c) {
        DensePoly r(std::max(f.size(), g.size()), 0);
        for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
        for (std::size_t i = 0; i < g.size(); ++i) r[i] = (r[i] + c * g[i]) % field.p();
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    };
    return {poly_mul(field, shifted(a), shifted(b)), a, b};
}

struct SquarefreeFraction {
    Rat fraction;           // #{a in F_p : f + a*g squarefree} / p
    bool hypotheses_hold;   // f,g coprime, f(0)g(0) != 0, deg g >= deg f
};

/// Exhaustive sweep over a in F_p; constants (and the zero polynomial) count
/// as squarefree since they have no positive-degree square divisor.
inline SquarefreeFraction squarefree_fraction_estimate(const DensePoly& f, const DensePoly& g,
                                                       const PrimeField& field) {
    if (field.p() > 100000)
        throw capability_error("squarefree_fraction_estimate: p exceeds the sweep ceiling");
    SquarefreeFraction out;
    DensePoly ft = f, gt = g;
    while (!ft.empty() && ft.back() == 0) ft.pop_back();
    while (!gt.empty() && gt.back() == 0) gt.pop_back();
    bool coprime = !ft.empty() && !gt.empty() && poly_gcd(field, ft, gt).size() == 1;
    bool const_ok = !ft.empty() && !gt.empty() && ft[0] != 0 && gt[0] != 0;
    bool deg_ok = gt.size() >= ft.size();
    out.hypotheses_hold = coprime && const_ok && deg_ok;
    unsigned long count = 0;
    const unsigned long p = mpz_get_ui(field.p().get_mpz_t());
    for (unsigned long a = 0; a < p; ++a) {
        DensePoly h(std::max(ft.size(), gt.size()), 0);
        for (std::size_t i = 0; i < ft.size(); ++i) h[i] = ft[i];
        for (std::size_t i = 0; i < gt.size(); ++i)
            h[i] = (h[i] + Int(a) * gt[i]) % field.p();
        while (!h.empty() && h.back() == 0) h.pop_back();
        if (h.size() < 3) {
            ++count;  // constants and linears are vacuously squarefree
            continue;
        }
        if (squarefree_test(field, h)) ++count;
    }
    out.fraction = Rat(Int(count), field.p());
    out.fraction.canonicalize();
    return out;
}

}  // namespace sublin

#endif
