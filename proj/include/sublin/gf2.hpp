#ifndef SUBLIN_GF2_HPP
#define SUBLIN_GF2_HPP

#include <cstdint>
#include <string>

#include "sublin/fp.hpp"

namespace sublin {

namespace gf2poly {

// Polynomials over GF(2), bit-encoded with the coefficient of x^i in bit i.

inline int degree(u64 a) { return a == 0 ? -1 : 63 - __builtin_clzll(a); }

/// Carry-less product; both inputs must have degree < 32 or the caller splits.
inline __uint128_t clmul(u64 a, u64 b) {
    __uint128_t r = 0;
    while (b) {
        int i = __builtin_ctzll(b);
        r ^= static_cast<__uint128_t>(a) << i;
        b &= b - 1;
    }
    return r;
}

inline u64 reduce(__uint128_t a, u64 mod) {
    const int dm = degree(mod);
    while (true) {
        int da;
        u64 hi = static_cast<u64>(a >> 64);
        if (hi)
            da = 64 + degree(hi);
        else {
            u64 lo = static_cast<u64>(a);
            da = degree(lo);
        }
        if (da < dm) return static_cast<u64>(a);
        a ^= static_cast<__uint128_t>(mod) << (da - dm);
    }
}

inline u64 mulmod(u64 a, u64 b, u64 mod) { return reduce(clmul(a, b), mod); }

inline u64 gcd(u64 a, u64 b) {
    while (b) {
        int shift = degree(a) - degree(b);
        if (shift < 0) {
            std::swap(a, b);
            continue;
        }
        a ^= b << shift;
        if (degree(a) < degree(b)) std::swap(a, b);
    }
    return a;
}

inline bool is_irreducible(u64 mod, unsigned d) {
    // x^(2^k) mod `mod` by repeated squaring; irreducible iff
    // gcd(x^(2^k) - x, mod) = 1 for 1 <= k < d and x^(2^d) = x.
    u64 x = reduce(2, mod);  // the class of x (reduced: degree-1 moduli map x to 1)
    u64 r = x;
    for (unsigned k = 1; k <= d; ++k) {
        r = mulmod(r, r, mod);
        if (k < d) {
            if (gcd(r ^ x, mod) != 1) return false;
        } else {
            if (r != x) return false;
        }
    }
    return true;
}

}  // namespace gf2poly

/// GF(2^d) in the power basis of a root of the lowest irreducible degree-d
/// modulus, d <= 63.
class BinaryField {
   public:
    explicit BinaryField(unsigned d) : d_(d) {
        if (d < 1 || d > 63) throw capability_error("BinaryField: degree must be in [1, 63]");
        for (u64 m = (1ULL << d) | 1; ; m += 2) {
            if (gf2poly::degree(m) > static_cast<int>(d))
                throw math_error("BinaryField: no irreducible modulus found");
            if (gf2poly::is_irreducible(m, d)) {
                modulus_ = m;
                break;
            }
        }
    }

    BinaryField(unsigned d, u64 modulus) : d_(d), modulus_(modulus) {
        if (d < 1 || d > 63) throw capability_error("BinaryField: degree must be in [1, 63]");
        if (gf2poly::degree(modulus) != static_cast<int>(d) || !gf2poly::is_irreducible(modulus, d))
            throw math_error("BinaryField: modulus is not irreducible of the right degree");
    }

    unsigned degree() const { return d_; }
    u64 modulus() const { return modulus_; }
    u64 order() const { return 1ULL << d_; }
    bool same_as(const BinaryField& o) const { return d_ == o.d_ && modulus_ == o.modulus_; }

   private:
    unsigned d_;
    u64 modulus_ = 0;
};

class BinaryFieldElement {
   public:
    BinaryFieldElement(u64 coords, BinaryField field) : v_(coords), f_(field) {
        if (gf2poly::degree(coords) >= static_cast<int>(field.degree()))
            throw math_error("BinaryFieldElement: coordinate vector too long");
    }

    u64 coords() const { return v_; }
    const BinaryField& field() const { return f_; }
    bool is_zero() const { return v_ == 0; }

    friend BinaryFieldElement operator+(const BinaryFieldElement& a, const BinaryFieldElement& b) {
        a.check(b);
        return BinaryFieldElement(a.v_ ^ b.v_, a.f_);
    }
    friend BinaryFieldElement operator*(const BinaryFieldElement& a, const BinaryFieldElement& b) {
        a.check(b);
        return BinaryFieldElement(gf2poly::mulmod(a.v_, b.v_, a.f_.modulus()), a.f_);
    }
    friend bool operator==(const BinaryFieldElement& a, const BinaryFieldElement& b) {
        return a.f_.same_as(b.f_) && a.v_ == b.v_;
    }
    friend bool operator!=(const BinaryFieldElement& a, const BinaryFieldElement& b) {
        return !(a == b);
    }

    BinaryFieldElement frobenius() const { return *this * *this; }

    BinaryFieldElement pow(u64 e) const {
        BinaryFieldElement r(1, f_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    BinaryFieldElement inverse() const {
        if (v_ == 0) throw math_error("inversion of zero in GF(2^d)");
        // extended Euclid on GF(2) polynomials
        u64 r0 = f_.modulus(), r1 = v_;
        u64 t0 = 0, t1 = 1;
        while (r1 != 0) {
            int shift = gf2poly::degree(r0) - gf2poly::degree(r1);
            if (shift < 0) {
                std::swap(r0, r1);
                std::swap(t0, t1);
                continue;
            }
            r0 ^= r1 << shift;
            t0 ^= t1 << shift;
            if (gf2poly::degree(r0) < gf2poly::degree(r1)) {
                std::swap(r0, r1);
                std::swap(t0, t1);
            }
        }
        // r0 = gcd = 1 (modulus irreducible); t0 is the inverse mod modulus
        return BinaryFieldElement(gf2poly::reduce(t0, f_.modulus()), f_);
    }

   private:
    void check(const BinaryFieldElement& o) const {
        if (!f_.same_as(o.f_)) throw math_error("binary field mismatch");
    }
    u64 v_;
    BinaryField f_;
};

}  // namespace sublin

#endif
