#ifndef SUBLIN_FP_HPP
#define SUBLIN_FP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sublin {

using Int = mpz_class;
using u64 = std::uint64_t;

class math_error : public std::runtime_error {
   public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

class capability_error : public std::runtime_error {
   public:
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

/// Deterministic stream of randomness; every randomized operation takes an
/// explicit seed and derives all draws from a stream like this one.
class Rng {
   public:
    explicit Rng(u64 seed) : gen_(seed) {}

    u64 word() { return gen_(); }

    /// Uniform integer in [0, n) by rejection sampling.
    Int below(const Int& n) {
        if (n <= 0) throw math_error("Rng::below: bound must be positive");
        const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        const unsigned topshift = static_cast<unsigned>(words * 64 - bits);
        while (true) {
            Int r = 0;
            for (std::size_t i = 0; i < words; ++i) {
                r <<= 64;
                u64 w = gen_();
                if (i == 0) w >>= topshift;
                r += Int(static_cast<unsigned long>(w));
            }
            if (r < n) return r;
        }
    }

    Int in_range(const Int& lo, const Int& hi_exclusive) { return lo + below(hi_exclusive - lo); }

   private:
    std::mt19937_64 gen_;
};

struct Factorization {
    // (prime, multiplicity), primes strictly increasing
    std::vector<std::pair<Int, unsigned>> factors;

    Int value() const {
        Int v = 1;
        for (const auto& [p, e] : factors)
            for (unsigned i = 0; i < e; ++i) v *= p;
        return v;
    }
};

inline bool is_probable_prime(const Int& n) {
    // 40 Miller-Rabin rounds: error probability below 4^-40 < 2^-80
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace detail {

inline Int pollard_rho_brent(const Int& n, Rng& rng, u64 budget) {
    // Brent's cycle-detection variant; returns a nontrivial factor or throws.
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int y = rng.in_range(1, n), c = rng.in_range(1, n), m = 128;
        Int g = 1, r = 1, q = 1, x, ys;
        u64 steps = 0;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = std::min(m, Int(r - k));
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                g = gcd(q, n);
                k += m;
                steps += mpz_get_ui(lim.get_mpz_t());
                if (steps > budget)
                    throw capability_error("order factorization unavailable: rho budget exhausted");
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
    throw capability_error("order factorization unavailable: rho failed repeatedly");
}

inline void factor_into(Int n, std::map<Int, unsigned>& out, Rng& rng, u64 budget,
                        unsigned long trial_bound) {
    if (n == 1) return;
    for (unsigned long d = 2; d <= trial_bound && Int(d) * d <= n; d = (d == 2 ? 3 : d + 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            out[Int(d)]++;
            n /= d;
        }
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    Int f = pollard_rho_brent(n, rng, budget);
    factor_into(f, out, rng, budget, trial_bound);
    factor_into(n / f, out, rng, budget, trial_bound);
}

}  // namespace detail

struct FactorConfig {
    unsigned long trial_division_bound = 1000000;
    u64 rho_iteration_budget = 50000000;
};

inline FactorConfig& factor_config() {
    static FactorConfig cfg;
    return cfg;
}

inline Factorization factor_integer(const Int& n) {
    if (n <= 0) throw math_error("factor_integer: positive input required");
    std::map<Int, unsigned> m;
    Rng rng(0x9e3779b97f4a7c15ULL);  // factoring randomness is not caller-visible
    detail::factor_into(n, m, rng, factor_config().rho_iteration_budget,
                        factor_config().trial_division_bound);
    Factorization f;
    for (auto& [p, e] : m) f.factors.emplace_back(p, e);
    return f;
}

/// Odd prime field F_p with a lazily computed factorization of p-1.
class PrimeField {
   public:
    explicit PrimeField(Int p) : impl_(std::make_shared<Impl>()) {
        if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
            throw math_error("PrimeField: modulus must be an odd prime >= 3");
        impl_->p = std::move(p);
    }

    PrimeField(Int p, Factorization order_fac) : PrimeField(std::move(p)) {
        if (order_fac.value() != impl_->p - 1)
            throw math_error("PrimeField: supplied factorization does not multiply to p-1");
        impl_->fac = std::move(order_fac);
    }

    const Int& p() const { return impl_->p; }

    const Factorization& order_factorization() const {
        std::call_once(impl_->once, [this] {
            if (!impl_->fac) impl_->fac = factor_integer(impl_->p - 1);
        });
        return *impl_->fac;
    }

    bool same_as(const PrimeField& o) const { return impl_ == o.impl_ || impl_->p == o.impl_->p; }

   private:
    struct Impl {
        Int p;
        mutable std::once_flag once;
        mutable std::optional<Factorization> fac;
    };
    std::shared_ptr<Impl> impl_;
};

class FieldElement {
   public:
    FieldElement(Int value, PrimeField field) : v_(std::move(value)), f_(std::move(field)) {
        v_ %= f_.p();
        if (v_ < 0) v_ += f_.p();
    }

    const Int& value() const { return v_; }
    const PrimeField& field() const { return f_; }
    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        Int r = a.v_ + b.v_;
        if (r >= a.f_.p()) r -= a.f_.p();
        return FieldElement(std::move(r), a.f_, 0);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        Int r = a.v_ - b.v_;
        if (r < 0) r += a.f_.p();
        return FieldElement(std::move(r), a.f_, 0);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return FieldElement(a.v_ * b.v_ % a.f_.p(), a.f_, 0);
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return a * b.inverse();
    }
    FieldElement operator-() const {
        return FieldElement(v_ == 0 ? Int(0) : Int(f_.p() - v_), f_, 0);
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.f_.same_as(b.f_) && a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement inverse() const {
        if (v_ == 0) throw math_error("division by zero in F_p");
        Int r;
        mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), f_.p().get_mpz_t());
        return FieldElement(std::move(r), f_, 0);
    }

    /// a^e with an arbitrary-precision exponent; negative exponents invert first.
    FieldElement pow(const Int& e) const {
        if (e < 0) return inverse().pow(-e);
        if (v_ == 0) return FieldElement(e == 0 ? Int(1) : Int(0), f_, 0);
        // nonzero base: reduce the exponent mod p-1
        Int er = e % (f_.p() - 1);
        Int r;
        mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), er.get_mpz_t(), f_.p().get_mpz_t());
        return FieldElement(std::move(r), f_, 0);
    }

   private:
    FieldElement(Int v, PrimeField f, int) : v_(std::move(v)), f_(std::move(f)) {}
    void check(const FieldElement& o) const {
        if (!f_.same_as(o.f_)) throw math_error("field mismatch");
    }
    Int v_;
    PrimeField f_;
};

inline FieldElement make_element(const PrimeField& f, const Int& v) { return FieldElement(v, f); }

/// Jacobi symbol (a | n) for odd n >= 3.
inline int jacobi(const Int& a, const Int& n) {
    if (n < 3 || mpz_even_p(n.get_mpz_t()))
        throw math_error("jacobi: lower argument must be odd and >= 3");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

/// Random quadratic nonresidue chi with (chi | p) = -1.
inline FieldElement find_quadratic_nonresidue(const PrimeField& field, u64 seed) {
    Rng rng(seed);
    while (true) {
        Int c = rng.in_range(2, field.p());
        if (jacobi(c, field.p()) == -1) return FieldElement(c, field);
    }
}

/// Random generator of F_p^*; requires the factorization of p-1.
inline FieldElement find_generator(const PrimeField& field, u64 seed) {
    if (field.p() == 3) return FieldElement(2, field);
    const Factorization& fac = field.order_factorization();
    Rng rng(seed);
    const Int order = field.p() - 1;
    while (true) {
        FieldElement g(rng.in_range(2, field.p()), field);
        bool ok = true;
        for (const auto& [r, e] : fac.factors) {
            if (g.pow(order / r).value() == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

namespace detail {

/// Discrete log of h base g where g has prime-power order r^s (Pohlig-Hellman
/// digits, baby-step/giant-step inside each order-r layer).
inline Int pp_dlog(const FieldElement& h, const FieldElement& g, const Int& r, unsigned s) {
    const Int& p = g.field().p();
    // BSGS table for the order-r subgroup generated by gr = g^(r^(s-1))
    Int rs = 1;
    for (unsigned i = 0; i < s; ++i) rs *= r;
    FieldElement gr = g.pow(rs / r);
    Int mm;
    mpz_sqrt(mm.get_mpz_t(), r.get_mpz_t());
    mm += 1;
    if (mm > 1 << 26) throw capability_error("pp_dlog: prime factor too large for BSGS");
    std::map<Int, Int> baby;
    FieldElement cur(1, g.field());
    for (Int j = 0; j < mm; ++j) {
        baby.emplace(cur.value(), j);
        cur = cur * gr;
    }
    FieldElement giant_step = gr.pow(mm).inverse();
    auto dlog_order_r = [&](FieldElement y) -> Int {
        for (Int i = 0; i * mm <= r; ++i) {
            auto it = baby.find(y.value());
            if (it != baby.end()) return (i * mm + it->second) % r;
            y = y * giant_step;
        }
        throw math_error("pp_dlog: element not in subgroup");
    };
    Int x = 0, rk = 1;
    for (unsigned k = 0; k < s; ++k) {
        FieldElement rest = h * g.pow(x).inverse();
        FieldElement yk = rest.pow(rs / (rk * r));
        Int d = dlog_order_r(yk);
        x += d * rk;
        rk *= r;
    }
    return x;
}

}  // namespace detail

/// Any x with x^k = y, for k dividing p-1 and y a k-th power; throws otherwise.
inline FieldElement kth_root(const FieldElement& y, const Int& k, u64 seed) {
    const PrimeField& field = y.field();
    const Int& p = field.p();
    const Int order = p - 1;
    if (k <= 0 || order % k != 0) throw math_error("kth_root: k must divide p-1");
    if (y.is_zero()) return y;
    if (k == 1) return y;
    FieldElement sigma = find_generator(field, seed);
    const Factorization& fac = field.order_factorization();
    FieldElement x(1, field);
    for (const auto& [r, s] : fac.factors) {
        Int rs = 1;
        for (unsigned i = 0; i < s; ++i) rs *= r;
        Int M = order / rs;  // cofactor
        Int c;
        mpz_invert(c.get_mpz_t(), M.get_mpz_t(), rs.get_mpz_t());
        FieldElement y_r = y.pow(M * c);  // component of y in the r^s-subgroup
        unsigned e = 0;
        Int kk = k;
        while (kk % r == 0) {
            kk /= r;
            ++e;
        }
        Int kprime = k;
        Int re = 1;
        for (unsigned i = 0; i < e; ++i) re *= r;
        kprime /= re;
        FieldElement x_r(1, field);
        if (y_r.value() != 1 || e > 0) {
            FieldElement g_r = sigma.pow(M);  // order r^s
            Int d = detail::pp_dlog(y_r, g_r, r, s);
            if (d % re != 0) throw math_error("kth_root: input is not a k-th power");
            x_r = g_r.pow(d / re);
        } else {
            x_r = y_r;
        }
        Int kp_inv;
        Int kpm = kprime % rs;
        mpz_invert(kp_inv.get_mpz_t(), kpm.get_mpz_t(), rs.get_mpz_t());
        x_r = x_r.pow(kp_inv);
        x = x * x_r;
    }
    return x;
}

}  // namespace sublin

#endif
