#ifndef SUBLIN_SPARSEPOLY_HPP
#define SUBLIN_SPARSEPOLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sublin/dense.hpp"
#include "sublin/fp.hpp"

namespace sublin {

class parse_error : public std::runtime_error {
   public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

struct Term {
    Int coeff;  // in [1, p)
    Int exp;    // signed in Laurent context, >= 0 otherwise
};

namespace detail {

inline std::vector<Term> canonical_terms(const PrimeField& field,
                                         const std::vector<std::pair<Int, Int>>& raw) {
    std::map<Int, Int> acc;
    for (const auto& [c, e] : raw) {
        Int cv = c % field.p();
        if (cv < 0) cv += field.p();
        if (cv == 0) continue;
        Int& slot = acc[e];
        slot = (slot + cv) % field.p();
    }
    std::vector<Term> out;
    for (auto& [e, c] : acc)
        if (c != 0) out.push_back({c, e});
    return out;
}

}  // namespace detail

/// Sparse polynomial over F_p: strictly increasing nonnegative exponents,
/// nonzero coefficients; the empty term list is the zero polynomial.
class SparsePoly {
   public:
    SparsePoly(PrimeField field, std::vector<std::pair<Int, Int>> raw_terms)
        : f_(std::move(field)), terms_(detail::canonical_terms(f_, raw_terms)) {
        for (const auto& t : terms_)
            if (t.exp < 0)
                throw math_error("SparsePoly: negative exponent (use LaurentPoly)");
    }

    const PrimeField& field() const { return f_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    Int degree() const { return terms_.empty() ? Int(-1) : terms_.back().exp; }
    bool has_constant_term() const { return !terms_.empty() && terms_.front().exp == 0; }

    FieldElement eval(const FieldElement& x) const {
        FieldElement acc(0, f_);
        for (const auto& t : terms_) acc = acc + FieldElement(t.coeff, f_) * x.pow(t.exp);
        return acc;
    }

    SparsePoly derivative() const {
        std::vector<std::pair<Int, Int>> raw;
        for (const auto& t : terms_) {
            if (t.exp == 0) continue;
            raw.emplace_back(t.coeff * (t.exp % f_.p()), t.exp - 1);
        }
        return SparsePoly(f_, std::move(raw));
    }

   private:
    PrimeField f_;
    std::vector<Term> terms_;
};

/// Laurent polynomial: as SparsePoly but exponents may be negative.
class LaurentPoly {
   public:
    LaurentPoly(PrimeField field, std::vector<std::pair<Int, Int>> raw_terms)
        : f_(std::move(field)), terms_(detail::canonical_terms(f_, raw_terms)) {}

    const PrimeField& field() const { return f_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Shift-normalization exponent: min(0, lowest exponent).
    Int shift() const { return terms_.empty() ? Int(0) : std::min(Int(0), terms_.front().exp); }

    /// z^{-shift} * this, as an ordinary sparse polynomial.
    SparsePoly normalized() const {
        Int l = shift();
        std::vector<std::pair<Int, Int>> raw;
        for (const auto& t : terms_) raw.emplace_back(t.coeff, t.exp - l);
        return SparsePoly(f_, std::move(raw));
    }

   private:
    PrimeField f_;
    std::vector<Term> terms_;
};

inline SparsePoly canonicalize(const PrimeField& field,
                               const std::vector<std::pair<Int, Int>>& raw_terms) {
    return SparsePoly(field, raw_terms);
}

// ---- dense polynomials at the public (engine-agnostic) level --------------

using DensePoly = std::vector<Int>;  // coefficients mod p, lowest degree first

namespace detail {

constexpr unsigned kWordEngineBits = 55;  // Kronecker slots must fit 128 bits

inline bool word_sized(const PrimeField& f) {
    return mpz_sizeinbase(f.p().get_mpz_t(), 2) <= kWordEngineBits;
}

inline std::vector<u64> to_words(const DensePoly& a) {
    std::vector<u64> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_get_ui(a[i].get_mpz_t());
    return r;
}

inline DensePoly from_words(const std::vector<u64>& a) {
    DensePoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    return r;
}

/// Run fn with the fastest applicable engine; fn receives (ops, polys...)
/// with every DensePoly argument converted to the engine representation,
/// and must return something convertible back via the second lambda.
template <class Fn>
auto with_engine(const PrimeField& field, const std::vector<DensePoly>& inputs, Fn&& fn) {
    if (word_sized(field)) {
        PolyOps<Zp64> ops{Zp64(field.p())};
        std::vector<std::vector<u64>> conv;
        conv.reserve(inputs.size());
        for (const auto& a : inputs) conv.push_back(to_words(a));
        return from_words(fn(ops, conv));
    }
    PolyOps<ZpBig> ops{ZpBig(field.p())};
    return fn(ops, inputs);
}

template <class F>
std::vector<std::pair<std::size_t, typename F::elt>> sparse_terms_for(
    const PolyOps<F>& ops, const SparsePoly& f) {
    std::vector<std::pair<std::size_t, typename F::elt>> terms;
    for (const auto& t : f.terms()) {
        if (!t.exp.fits_ulong_p())
            throw capability_error("sparse modulus degree does not fit a machine word");
        terms.emplace_back(mpz_get_ui(t.exp.get_mpz_t()), ops.fld.from_int(t.coeff));
    }
    return terms;
}

}  // namespace detail

inline DensePoly to_dense(const SparsePoly& f) {
    if (f.is_zero()) return {};
    if (!f.degree().fits_ulong_p())
        throw capability_error("polynomial degree does not fit a machine word");
    DensePoly r(mpz_get_ui(f.degree().get_mpz_t()) + 1, 0);
    for (const auto& t : f.terms()) r[mpz_get_ui(t.exp.get_mpz_t())] = t.coeff;
    return r;
}

inline SparsePoly from_dense(const PrimeField& field, const DensePoly& a) {
    std::vector<std::pair<Int, Int>> raw;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) raw.emplace_back(a[i], Int(static_cast<unsigned long>(i)));
    return SparsePoly(field, std::move(raw));
}

inline FieldElement eval_dense(const PrimeField& field, const DensePoly& a,
                               const FieldElement& x) {
    FieldElement r(0, field);
    for (std::size_t i = a.size(); i-- > 0;) r = r * x + FieldElement(a[i], field);
    return r;
}

/// x^N mod f by recursive squaring against the sparse modulus.
inline DensePoly mod_pow_x(const Int& N, const SparsePoly& f) {
    if (f.degree() < 1) throw math_error("mod_pow_x: modulus must have positive degree");
    if (N < 0) throw math_error("mod_pow_x: exponent must be nonnegative");
    const PrimeField& field = f.field();
    if (detail::word_sized(field)) {
        PolyOps<Zp64> ops{Zp64(field.p())};
        return detail::from_words(ops.powx_mod(N, ops.make_sparse_mod(detail::sparse_terms_for(ops, f))));
    }
    PolyOps<ZpBig> ops{ZpBig(field.p())};
    return ops.powx_mod(N, ops.make_sparse_mod(detail::sparse_terms_for(ops, f)));
}

inline DensePoly poly_gcd(const PrimeField& field, const DensePoly& f, const DensePoly& g) {
    bool fz = std::all_of(f.begin(), f.end(), [](const Int& c) { return c == 0; });
    bool gz = std::all_of(g.begin(), g.end(), [](const Int& c) { return c == 0; });
    if (fz && gz) throw math_error("poly_gcd: both inputs are zero");
    return detail::with_engine(field, {f, g}, [](auto& ops, const auto& in) {
        auto a = in[0], b = in[1];
        ops.trim(a);
        ops.trim(b);
        return ops.gcd(a, b);
    });
}

inline DensePoly poly_mul(const PrimeField& field, const DensePoly& f, const DensePoly& g) {
    return detail::with_engine(field, {f, g}, [](auto& ops, const auto& in) {
        auto a = in[0], b = in[1];
        ops.trim(a);
        ops.trim(b);
        return ops.mul(a, b);
    });
}

inline std::pair<DensePoly, DensePoly> poly_divmod(const PrimeField& field, const DensePoly& f,
                                                   const DensePoly& g) {
    DensePoly q, r;
    detail::with_engine(field, {f, g}, [&](auto& ops, const auto& in) {
        auto a = in[0], b = in[1];
        ops.trim(a);
        ops.trim(b);
        auto [qq, rr] = ops.divmod(a, b);
        using P = std::decay_t<decltype(qq)>;
        if constexpr (std::is_same_v<P, std::vector<u64>>) {
            q = detail::from_words(qq);
            r = detail::from_words(rr);
        } else {
            q = qq;
            r = rr;
        }
        return a;  // unused
    });
    return {q, r};
}

/// Whether f has a root in the order-N subgroup of F_p^*, with the witness
/// gcd(x^N - 1, f): nontrivial exactly when a root exists.
inline std::pair<bool, DensePoly> root_in_subgroup(const SparsePoly& f, const Int& N) {
    const PrimeField& field = f.field();
    if (N <= 0 || (field.p() - 1) % N != 0)
        throw math_error("root_in_subgroup: N must divide p-1");
    if (f.degree() < 1) throw math_error("root_in_subgroup: deg f must be >= 1");
    DensePoly r = mod_pow_x(N, f);  // x^N mod f
    if (r.empty()) r.resize(1, 0);
    r[0] = (r[0] - 1 + field.p()) % field.p();  // x^N - 1 mod f
    DensePoly g = poly_gcd(field, r, to_dense(f));
    return {g.size() >= 2, g};
}

inline bool squarefree_test(const PrimeField& field, const DensePoly& f) {
    DensePoly a = f;
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.size() < 2) throw math_error("squarefree_test: input must have positive degree");
    DensePoly d(a.size() - 1, 0);
    bool dz = true;
    for (std::size_t i = 1; i < a.size(); ++i) {
        d[i - 1] = a[i] * Int(static_cast<unsigned long>(i)) % field.p();
        if (d[i - 1] != 0) dz = false;
    }
    if (dz) return false;  // p-th power, not squarefree at positive degree
    return poly_gcd(field, a, d).size() == 1;
}

/// All roots of a dense polynomial in F_p (randomized splitting; the
/// rootless part is discarded).
inline std::vector<Int> poly_roots(const PrimeField& field, const DensePoly& f, u64 seed) {
    Rng rng(seed);
    if (detail::word_sized(field)) {
        PolyOps<Zp64> ops{Zp64(field.p())};
        auto a = detail::to_words(f);
        ops.trim(a);
        auto rs = ops.roots(a, rng);
        std::vector<Int> out;
        for (u64 r : rs) out.push_back(Int(static_cast<unsigned long>(r)));
        std::sort(out.begin(), out.end());
        return out;
    }
    PolyOps<ZpBig> ops{ZpBig(field.p())};
    auto a = f;
    ops.trim(a);
    auto out = ops.roots(a, rng);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- text and JSON forms ---------------------------------------------------

/// Grammar: terms joined by '+'/'-'; term = [coeff][*][x[^exp]]; decimal
/// integers of arbitrary size; whitespace ignored everywhere.
inline SparsePoly parse_poly(const std::string& text, const PrimeField& field) {
    std::vector<std::pair<Int, Int>> raw;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_number = [&]() -> Int {
        std::size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw parse_error("expected a decimal integer", start);
        return Int(text.substr(start, i - start));
    };
    skip_ws();
    if (i == n) throw parse_error("empty polynomial", 0);
    bool first = true;
    while (true) {
        skip_ws();
        int sign = 1;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            if (i >= n) break;
            throw parse_error("expected '+' or '-' between terms", i);
        }
        if (i >= n) throw parse_error("dangling sign", i);
        Int coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = read_number();
            saw_coeff = true;
            skip_ws();
            if (i < n && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        Int exp = 0;
        if (i < n && (text[i] == 'x' || text[i] == 'X')) {
            ++i;
            skip_ws();
            exp = 1;
            if (i < n && text[i] == '^') {
                ++i;
                skip_ws();
                exp = read_number();
            }
        } else if (!saw_coeff) {
            throw parse_error("expected a coefficient or 'x'", i);
        }
        raw.emplace_back(sign * coeff, exp);
        first = false;
        skip_ws();
        if (i >= n) break;
    }
    return SparsePoly(field, std::move(raw));
}

inline std::string format_poly(const SparsePoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& t : f.terms()) {
        if (!out.empty()) out += " + ";
        if (t.exp == 0) {
            out += t.coeff.get_str();
        } else {
            if (t.coeff != 1) out += t.coeff.get_str() + "*";
            out += "x";
            if (t.exp != 1) out += "^" + t.exp.get_str();
        }
    }
    return out;
}

inline nlohmann::json poly_to_json(const SparsePoly& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : f.terms())
        terms.push_back({t.coeff.get_str(), t.exp.get_str()});
    return {{"p", f.field().p().get_str()}, {"terms", terms}};
}

inline SparsePoly poly_from_json(const nlohmann::json& j) {
    PrimeField field{Int(j.at("p").get<std::string>())};
    std::vector<std::pair<Int, Int>> raw;
    for (const auto& t : j.at("terms"))
        raw.emplace_back(Int(t.at(0).get<std::string>()), Int(t.at(1).get<std::string>()));
    return SparsePoly(field, std::move(raw));
}

}  // namespace sublin

#endif
