#ifndef SUBLIN_DENSE_HPP
#define SUBLIN_DENSE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "sublin/fp.hpp"

namespace sublin {

// Coefficient engines. Dense polynomials are coefficient vectors, lowest
// degree first; the zero polynomial is the empty vector.

struct Zp64 {
    using elt = u64;
    u64 p;

    explicit Zp64(u64 prime) : p(prime) {}
    explicit Zp64(const Int& prime) : p(mpz_get_ui(prime.get_mpz_t())) {
        if (!prime.fits_ulong_p()) throw math_error("Zp64: modulus does not fit a word");
    }

    static constexpr bool is_word = true;
    unsigned modulus_bits() const { return 64 - __builtin_clzll(p); }

    elt zero() const { return 0; }
    elt one() const { return 1; }
    bool is_zero(elt a) const { return a == 0; }
    elt add(elt a, elt b) const {
        u64 s = a + b;
        return s >= p || s < a ? s - p : s;
    }
    elt sub(elt a, elt b) const { return a >= b ? a - b : a + p - b; }
    elt neg(elt a) const { return a == 0 ? 0 : p - a; }
    elt mul(elt a, elt b) const {
        return static_cast<u64>(static_cast<__uint128_t>(a) * b % p);
    }
    elt inv(elt a) const {
        if (a == 0) throw math_error("division by zero in F_p");
        long long t0 = 0, t1 = 1;
        u64 r0 = p, r1 = a;
        while (r1) {
            u64 q = r0 / r1;
            u64 r2 = r0 - q * r1;
            long long t2 = t0 - static_cast<long long>(q) * t1;
            r0 = r1; r1 = r2; t0 = t1; t1 = t2;
        }
        long long t = t0 % static_cast<long long>(p);
        if (t < 0) t += p;
        return static_cast<u64>(t);
    }
    elt from_int(const Int& v) const {
        Int r = v % Int(static_cast<unsigned long>(p));
        if (r < 0) r += static_cast<unsigned long>(p);
        return mpz_get_ui(r.get_mpz_t());
    }
    Int to_int(elt a) const { return Int(static_cast<unsigned long>(a)); }
    elt random(Rng& rng) const { return mpz_get_ui(rng.below(Int(static_cast<unsigned long>(p))).get_mpz_t()); }
};

struct ZpBig {
    using elt = Int;
    Int p;

    explicit ZpBig(Int prime) : p(std::move(prime)) {}

    static constexpr bool is_word = false;
    unsigned modulus_bits() const { return mpz_sizeinbase(p.get_mpz_t(), 2); }

    elt zero() const { return 0; }
    elt one() const { return 1; }
    bool is_zero(const elt& a) const { return a == 0; }
    elt add(const elt& a, const elt& b) const {
        Int s = a + b;
        if (s >= p) s -= p;
        return s;
    }
    elt sub(const elt& a, const elt& b) const {
        Int s = a - b;
        if (s < 0) s += p;
        return s;
    }
    elt neg(const elt& a) const { return a == 0 ? Int(0) : Int(p - a); }
    elt mul(const elt& a, const elt& b) const { return a * b % p; }
    elt inv(const elt& a) const {
        if (a == 0) throw math_error("division by zero in F_p");
        Int r;
        mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    elt from_int(const Int& v) const {
        Int r = v % p;
        if (r < 0) r += p;
        return r;
    }
    Int to_int(const elt& a) const { return a; }
    elt random(Rng& rng) const { return rng.below(p); }
};

/// Dense polynomial arithmetic over a coefficient engine. Multiplication
/// switches to Kronecker substitution (one big-integer product) past a
/// cutoff; gcd switches to a divide-and-conquer remainder scheme.
template <class F>
struct PolyOps {
    using elt = typename F::elt;
    using Poly = std::vector<elt>;
    using Mat = std::array<Poly, 4>;  // row-major 2x2

    F fld;
    explicit PolyOps(F f) : fld(std::move(f)) {}

    static long deg(const Poly& a) { return static_cast<long>(a.size()) - 1; }

    void trim(Poly& a) const {
        while (!a.empty() && fld.is_zero(a.back())) a.pop_back();
    }

    bool is_zero(const Poly& a) const { return a.empty(); }

    Poly constant(const elt& c) const {
        if (fld.is_zero(c)) return {};
        return {c};
    }

    Poly add(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), fld.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = fld.add(r[i], b[i]);
        trim(r);
        return r;
    }

    Poly sub(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), fld.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = fld.sub(r[i], b[i]);
        trim(r);
        return r;
    }

    Poly scale(const Poly& a, const elt& c) const {
        if (fld.is_zero(c)) return {};
        Poly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = fld.mul(a[i], c);
        trim(r);
        return r;
    }

    Poly mul_schoolbook(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, fld.zero());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (fld.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = fld.add(r[i + j], fld.mul(a[i], b[j]));
        }
        trim(r);
        return r;
    }

    /// Kronecker substitution: pack coefficients into fixed-width slots of a
    /// big integer, multiply once with GMP, unpack with per-slot reduction.
    Poly mul_kronecker(const Poly& a, const Poly& b) const {
        if constexpr (F::is_word) return mul_kronecker_bits(a, b);
        return mul_kronecker_words(a, b);
    }

    /// Word-engine variant: slots at bit granularity, so the packed integers
    /// carry no per-slot padding beyond the carry headroom.
    Poly mul_kronecker_bits(const Poly& a, const Poly& b) const {
        const u64 n = std::min(a.size(), b.size());
        const unsigned slot_bits = 2 * fld.modulus_bits() + 64 - __builtin_clzll(n);
        if (slot_bits > 128) return mul_schoolbook(a, b);  // 55-bit moduli at extreme lengths
        Int pa = pack_bits(a, slot_bits);
        Int prod;
        if (&a == &b) {
            mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());  // squaring path
        } else {
            Int pb = pack_bits(b, slot_bits);
            mpz_mul(prod.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
        }
        return unpack_bits(prod, slot_bits, a.size() + b.size() - 1);
    }

    Poly mul_kronecker_words(const Poly& a, const Poly& b) const {
        const std::size_t n = std::max(a.size(), b.size());
        unsigned slot_bits = 2 * fld.modulus_bits() + 64 - __builtin_clzll(n);
        const unsigned words = (slot_bits + 63) / 64;
        Int pa = pack(a, words), pb = pack(b, words);
        Int prod = pa * pb;
        return unpack(prod, words, a.size() + b.size() - 1);
    }

    Poly mul(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        if (std::min(a.size(), b.size()) < 32 || a.size() + b.size() < 96)
            return mul_schoolbook(a, b);
        return mul_kronecker(a, b);
    }

    /// Classical division with remainder: a = q*b + r, deg r < deg b.
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
        if (b.empty()) throw math_error("polynomial division by zero");
        if (a.size() < b.size()) return {{}, a};
        Poly r = a;
        Poly q(a.size() - b.size() + 1, fld.zero());
        const elt lcinv = fld.inv(b.back());
        for (std::size_t i = a.size(); i-- >= b.size();) {
            if (fld.is_zero(r[i])) {
                if (i == 0) break;
                continue;
            }
            elt c = fld.mul(r[i], lcinv);
            q[i - b.size() + 1] = c;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i - b.size() + 1 + j] = fld.sub(r[i - b.size() + 1 + j], fld.mul(c, b[j]));
            if (i == 0) break;
        }
        trim(q);
        trim(r);
        return {q, r};
    }

    Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }

    Poly monic(const Poly& a) const {
        if (a.empty()) return a;
        return scale(a, fld.inv(a.back()));
    }

    Poly gcd_classical(Poly a, Poly b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            Poly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // ---- divide-and-conquer gcd -------------------------------------------
    //
    // All transforms below are 2x2 matrices over F_p[x] with unit constant
    // determinant (products of Euclidean step matrices [[0,1],[1,-q]]), so
    // they preserve the ideal generated by the pair and thus the gcd; the
    // half-gcd recursion only affects how fast the degrees shrink.

    static Mat mat_identity() { return Mat{Poly{}, Poly{}, Poly{}, Poly{}}; }

    Mat mat_one() const { return Mat{constant(fld.one()), Poly{}, Poly{}, constant(fld.one())}; }

    Mat mat_mul(const Mat& a, const Mat& b) const {
        return Mat{add(mul(a[0], b[0]), mul(a[1], b[2])), add(mul(a[0], b[1]), mul(a[1], b[3])),
                   add(mul(a[2], b[0]), mul(a[3], b[2])), add(mul(a[2], b[1]), mul(a[3], b[3]))};
    }

    void mat_apply(const Mat& m, Poly& a, Poly& b) const {
        Poly na = add(mul(m[0], a), mul(m[1], b));
        Poly nb = add(mul(m[2], a), mul(m[3], b));
        a = std::move(na);
        b = std::move(nb);
    }

    Mat step_matrix(const Poly& q) const {
        // (a, b) -> (b, a - q b)
        Poly nq(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) nq[i] = fld.neg(q[i]);
        return Mat{Poly{}, constant(fld.one()), constant(fld.one()), nq};
    }

    /// step_matrix(q) * M with only the two products the step structure needs.
    Mat step_apply(const Poly& q, const Mat& M) const {
        return Mat{M[2], M[3], sub(M[0], mul(q, M[2])), sub(M[1], mul(q, M[3]))};
    }

    Poly shift_down(const Poly& a, long k) const {
        if (k <= 0) return a;
        if (static_cast<std::size_t>(k) >= a.size()) return {};
        return Poly(a.begin() + k, a.end());
    }

    static constexpr long kHgcdCutoff = 256;

    struct HalfGcd {
        Mat M;
        Poly a, b;  // M applied to the input pair, carried to spare callers a
                    // full-length reapplication
    };

    Poly take_low(const Poly& a, long k) const {
        if (k <= 0) return {};
        Poly r(a.begin(), a.begin() + std::min<std::size_t>(a.size(), k));
        trim(r);
        return r;
    }

    Poly shift_up(Poly a, long k) const {
        if (a.empty() || k <= 0) return a;
        a.insert(a.begin(), k, fld.zero());
        return a;
    }

    /// Apply M to the full pair given M applied to the top halves: the low
    /// parts only meet the (short) matrix entries, not the full-length inputs.
    std::pair<Poly, Poly> apply_with_tops(const Mat& M, const Poly& ta, const Poly& tb,
                                          const Poly& alow, const Poly& blow, long m) const {
        Poly na = add(shift_up(ta, m), add(mul(M[0], alow), mul(M[1], blow)));
        Poly nb = add(shift_up(tb, m), add(mul(M[2], alow), mul(M[3], blow)));
        return {std::move(na), std::move(nb)};
    }

    /// Degree of the pair drops to roughly half of deg a.
    HalfGcd hgcd(const Poly& a, const Poly& b) const {
        const long n = deg(a);
        const long m = (n + 1) / 2;
        if (b.empty() || deg(b) < m) return {mat_one(), a, b};
        if (n < kHgcdCutoff) return euclid_until(a, b, m);
        HalfGcd h1 = hgcd(shift_down(a, m), shift_down(b, m));
        auto [t1, t2] = apply_with_tops(h1.M, h1.a, h1.b, take_low(a, m), take_low(b, m), m);
        if (!t2.empty() && deg(t2) >= deg(t1)) {
            // the truncated quotients were not valid for the full pair;
            // fall back to explicit division steps for this range
            HalfGcd R = euclid_until(std::move(t1), std::move(t2), m);
            return {mat_mul(R.M, h1.M), std::move(R.a), std::move(R.b)};
        }
        if (t2.empty() || deg(t2) < m) return {std::move(h1.M), std::move(t1), std::move(t2)};
        auto [q, r] = divmod(t1, t2);
        Mat Q = step_apply(q, h1.M);
        if (r.empty() || deg(r) < m) return {std::move(Q), std::move(t2), std::move(r)};
        long l = deg(t2);
        long k = 2 * m - l;
        if (k < 0) k = 0;
        HalfGcd h2 = hgcd(shift_down(t2, k), shift_down(r, k));
        auto [u1, u2] = apply_with_tops(h2.M, h2.a, h2.b, take_low(t2, k), take_low(r, k), k);
        return {mat_mul(h2.M, Q), std::move(u1), std::move(u2)};
    }

    /// Explicit Euclidean steps until deg of the second entry drops below
    /// `floor_deg` (or the pair terminates); returns the accumulated matrix
    /// and the reduced pair.
    HalfGcd euclid_until(Poly a, Poly b, long floor_deg) const {
        Mat M = mat_one();
        while (!b.empty() && deg(b) >= floor_deg && deg(a) >= deg(b)) {
            auto [q, r] = divmod(a, b);
            M = step_apply(q, M);
            a = std::move(b);
            b = std::move(r);
        }
        return {std::move(M), std::move(a), std::move(b)};
    }

    Poly gcd(Poly a, Poly b) const {
        trim(a);
        trim(b);
        if (deg(a) < deg(b)) std::swap(a, b);
        while (!b.empty()) {
            if (deg(a) < kHgcdCutoff) return gcd_classical(std::move(a), std::move(b));
            HalfGcd h = hgcd(a, b);
            a = std::move(h.a);
            b = std::move(h.b);
            if (deg(a) < deg(b)) std::swap(a, b);
            if (!b.empty()) {
                Poly r = rem(a, b);  // guaranteed progress per round
                a = std::move(b);
                b = std::move(r);
            }
        }
        return monic(a);
    }

    // ---- powers of x modulo a sparse polynomial ---------------------------

    struct SparseMod {
        // monic modulus: x^degree + sum coeff_i x^exp_i, exp_i < degree
        std::size_t degree;
        std::vector<std::pair<std::size_t, elt>> lower;  // (exp, coeff)
    };

    SparseMod make_sparse_mod(const std::vector<std::pair<std::size_t, elt>>& terms) const {
        // terms: (exp, coeff) ascending, leading coeff nonzero
        if (terms.empty() || terms.back().first == 0)
            throw math_error("sparse modulus must have positive degree");
        SparseMod m;
        m.degree = terms.back().first;
        elt lcinv = fld.inv(terms.back().second);
        for (std::size_t i = 0; i + 1 < terms.size(); ++i)
            m.lower.emplace_back(terms[i].first, fld.mul(terms[i].second, lcinv));
        return m;
    }

    void sparse_reduce(Poly& r, const SparseMod& f) const {
        for (std::size_t i = r.size(); i-- > f.degree;) {
            if (fld.is_zero(r[i])) continue;
            elt c = r[i];
            r[i] = fld.zero();
            for (const auto& [e, a] : f.lower)
                r[i - f.degree + e] = fld.sub(r[i - f.degree + e], fld.mul(c, a));
        }
        trim(r);
    }

    /// x^N mod f for a sparse monic-izable modulus, by repeated squaring.
    Poly powx_mod(const Int& N, const SparseMod& f) const {
        if (N < 0) throw math_error("powx_mod: negative exponent");
        if (N < Int(static_cast<unsigned long>(f.degree))) {
            Poly r(mpz_get_ui(N.get_mpz_t()) + 1, fld.zero());
            r.back() = fld.one();
            return r;
        }
        const std::size_t bits = mpz_sizeinbase(N.get_mpz_t(), 2);
        Poly r{fld.one()};
        for (std::size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(N.get_mpz_t(), i)) r.insert(r.begin(), fld.zero());
            sparse_reduce(r, f);
        }
        return r;
    }

    // ---- misc -------------------------------------------------------------

    elt eval(const Poly& a, const elt& x) const {
        elt r = fld.zero();
        for (std::size_t i = a.size(); i-- > 0;) r = fld.add(fld.mul(r, x), a[i]);
        return r;
    }

    Poly derivative(const Poly& a) const {
        if (a.size() < 2) return {};
        Poly r(a.size() - 1, fld.zero());
        elt k = fld.zero();
        for (std::size_t i = 1; i < a.size(); ++i) {
            k = fld.add(k, fld.one());
            r[i - 1] = fld.mul(a[i], k);
        }
        trim(r);
        return r;
    }

    bool divides(const Poly& d, const Poly& a) const { return rem(a, d).empty(); }

    /// Squarefree part: a / gcd(a, a'); requires a' != 0.
    Poly radical(const Poly& a) const {
        Poly d = derivative(a);
        if (d.empty()) throw math_error("radical: derivative vanishes");
        Poly g = gcd(a, d);
        return monic(divmod(a, g).first);
    }

    /// All roots in F_p of a polynomial that splits into distinct linear
    /// factors over F_p times a rootless part (randomized splitting).
    std::vector<elt> roots(const Poly& a, Rng& rng) const {
        Poly f = monic(a);
        if (f.empty()) throw math_error("roots: zero polynomial");
        // keep only the part that splits over F_p: gcd(f, x^p - x)
        SparseMod xmod = sparse_mod_from_dense(f);
        Poly xp = powx_mod(modulus_int(), xmod);  // x^p mod f
        // x^p - x
        Poly xpminusx = xp;
        if (xpminusx.size() < 2) xpminusx.resize(2, fld.zero());
        xpminusx[1] = fld.sub(xpminusx[1], fld.one());
        trim(xpminusx);
        Poly lin = gcd(f, xpminusx);
        // strip repeated roots
        Poly dl = derivative(lin);
        if (!dl.empty()) {
            Poly g = gcd(lin, dl);
            lin = monic(divmod(lin, g).first);
        }
        std::vector<elt> out;
        split_roots(lin, rng, out);
        return out;
    }

   private:
    Int modulus_int() const { return fld.to_int(fld.zero()) + to_int_modulus(); }
    Int to_int_modulus() const {
        if constexpr (F::is_word)
            return Int(static_cast<unsigned long>(fld.p));
        else
            return fld.p;
    }

    SparseMod sparse_mod_from_dense(const Poly& f) const {
        std::vector<std::pair<std::size_t, elt>> terms;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!fld.is_zero(f[i])) terms.emplace_back(i, f[i]);
        return make_sparse_mod(terms);
    }

    void split_roots(const Poly& f, Rng& rng, std::vector<elt>& out) const {
        // f: monic product of distinct linear factors
        if (f.size() <= 1) return;
        if (f.size() == 2) {
            out.push_back(fld.neg(f[0]));  // monic x + c
            return;
        }
        const Int half = (to_int_modulus() - 1) / 2;
        SparseMod fm = sparse_mod_from_dense(f);
        while (true) {
            // (x + c)^((p-1)/2) mod f splits the roots into residue classes
            elt c = fld.random(rng);
            Poly base{c, fld.one()};
            Poly pw = pow_mod(base, half, fm);
            if (pw.empty()) {
                // x = -c is a root; divide out and retry
                continue;
            }
            Poly pw1 = pw;
            if (pw1.empty()) pw1.resize(1, fld.zero());
            pw1[0] = fld.sub(pw1[0], fld.one());
            trim(pw1);
            Poly g = gcd(f, pw1);
            if (deg(g) >= 1 && g.size() < f.size()) {
                split_roots(g, rng, out);
                split_roots(monic(divmod(f, g).first), rng, out);
                return;
            }
        }
    }

    Poly pow_mod(Poly base, const Int& e, const SparseMod& f) const {
        Poly r{fld.one()};
        sparse_reduce(base, f);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        if (e == 0) return r;
        for (std::size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            sparse_reduce(r, f);
            if (mpz_tstbit(e.get_mpz_t(), i)) {
                r = mul(r, base);
                sparse_reduce(r, f);
            }
        }
        return r;
    }

    Int pack_bits(const Poly& a, unsigned slot_bits) const {
        static_assert(F::is_word || true, "");
        std::vector<u64> buf((a.size() * std::size_t(slot_bits) + 63) / 64 + 2, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            u64 v;
            if constexpr (F::is_word)
                v = a[i];
            else
                v = 0;  // unreachable: bit packing is only used by word engines
            std::size_t pos = i * slot_bits;
            std::size_t w = pos / 64, off = pos % 64;
            buf[w] |= v << off;
            if (off) buf[w + 1] |= v >> (64 - off);
        }
        Int r;
        mpz_import(r.get_mpz_t(), buf.size(), -1, 8, 0, 0, buf.data());
        return r;
    }

    Poly unpack_bits(const Int& prod, unsigned slot_bits, std::size_t out_len) const {
        std::vector<u64> buf((out_len * std::size_t(slot_bits) + 63) / 64 + 4, 0);
        std::size_t cnt = 0;
        mpz_export(buf.data(), &cnt, -1, 8, 0, 0, prod.get_mpz_t());
        const __uint128_t mask = slot_bits >= 128
                                     ? ~__uint128_t(0)
                                     : ((__uint128_t(1) << slot_bits) - 1);
        Poly r(out_len, fld.zero());
        for (std::size_t i = 0; i < out_len; ++i) {
            std::size_t pos = i * slot_bits;
            std::size_t w = pos / 64, off = pos % 64;
            __uint128_t v = (__uint128_t(buf[w + 1]) << 64) | buf[w];
            if (off) {
                v >>= off;
                v |= __uint128_t(buf[w + 2]) << (128 - off);
            }
            v &= mask;
            if constexpr (F::is_word) r[i] = static_cast<u64>(v % fld.p);
        }
        trim(r);
        return r;
    }

    Int pack(const Poly& a, unsigned words) const {
        std::vector<u64> buf(a.size() * words, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if constexpr (F::is_word) {
                buf[i * words] = a[i];
            } else {
                std::size_t cnt = 0;
                mpz_export(buf.data() + i * words, &cnt, -1, 8, 0, 0, a[i].get_mpz_t());
            }
        }
        Int r;
        mpz_import(r.get_mpz_t(), buf.size(), -1, 8, 0, 0, buf.data());
        return r;
    }

    Poly unpack(const Int& prod, unsigned words, std::size_t out_len) const {
        std::vector<u64> buf(out_len * words + 2, 0);
        std::size_t cnt = 0;
        mpz_export(buf.data(), &cnt, -1, 8, 0, 0, prod.get_mpz_t());
        Poly r(out_len, fld.zero());
        for (std::size_t i = 0; i < out_len; ++i) {
            if constexpr (F::is_word) {
                if (words == 1) {
                    r[i] = buf[i] % fld.p;
                } else {
                    __uint128_t v = buf[i * words];
                    if (words >= 2) v |= static_cast<__uint128_t>(buf[i * words + 1]) << 64;
                    r[i] = static_cast<u64>(v % fld.p);
                }
            } else {
                Int v;
                mpz_import(v.get_mpz_t(), words, -1, 8, 0, 0, buf.data() + i * words);
                r[i] = fld.from_int(v);
            }
        }
        trim(r);
        return r;
    }
};

}  // namespace sublin

#endif
