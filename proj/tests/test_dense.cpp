#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sublin/dense.hpp"

using namespace sublin;

namespace {

template <class Ops>
typename Ops::Poly random_poly(const Ops& ops, Rng& rng, std::size_t len) {
    typename Ops::Poly r(len);
    for (auto& c : r) c = ops.fld.random(rng);
    ops.trim(r);
    return r;
}

}  // namespace

TEST_CASE("zp64 engine arithmetic") {
    Zp64 F(13);
    CHECK(F.add(7, 9) == 3);
    CHECK(F.sub(3, 7) == 9);
    CHECK(F.mul(5, 8) == 1);
    CHECK(F.mul(F.inv(5), 5) == 1);
    CHECK_THROWS_AS(F.inv(0), math_error);
    CHECK(F.from_int(Int(-1)) == 12);
}

TEST_CASE("zpbig engine arithmetic") {
    ZpBig F(Int("1000000000000000003"));
    Int a("999999999999999999"), b("5");
    CHECK(F.add(a, b) == 1);
    CHECK(F.mul(F.inv(a), a) == 1);
    CHECK_THROWS_AS(F.inv(Int(0)), math_error);
}

TEST_CASE("schoolbook and kronecker multiplication agree") {
    for (u64 p : {13ULL, 1000000007ULL}) {
        PolyOps<Zp64> ops{Zp64(p)};
        Rng rng(p);
        for (std::size_t n : {5, 40, 130, 600}) {
            auto a = random_poly(ops, rng, n);
            auto b = random_poly(ops, rng, n + 3);
            CHECK(ops.mul_schoolbook(a, b) == ops.mul_kronecker(a, b));
        }
    }
    PolyOps<ZpBig> big{ZpBig(Int("340282366920938463463374607431768211507"))};
    Rng rng(1);
    auto a = random_poly(big, rng, 90);
    auto b = random_poly(big, rng, 75);
    CHECK(big.mul_schoolbook(a, b) == big.mul_kronecker(a, b));
}

TEST_CASE("division with remainder") {
    PolyOps<Zp64> ops{Zp64(13)};
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_poly(ops, rng, 30);
        auto b = random_poly(ops, rng, 7);
        if (b.empty()) continue;
        auto [q, r] = ops.divmod(a, b);
        CHECK(ops.deg(r) < ops.deg(b));
        CHECK(ops.add(ops.mul(q, b), r) == a);
    }
    CHECK_THROWS_AS(ops.divmod({{1}}, {}), math_error);
}

TEST_CASE("classical gcd on known factorizations") {
    PolyOps<Zp64> ops{Zp64(7)};
    // (x-1)(x+1) and (x-1)(x+2): gcd = x-1 -> monic {6, 1} means -1 + x
    PolyOps<Zp64>::Poly f{6, 0, 1};   // x^2 - 1
    PolyOps<Zp64>::Poly g{5, 1, 1};   // x^2 + x - 2
    auto d = ops.gcd_classical(f, g);
    CHECK(d == PolyOps<Zp64>::Poly{6, 1});
    CHECK(ops.gcd_classical(f, {}) == ops.monic(f));
}

TEST_CASE("fast gcd matches classical gcd") {
    for (u64 p : {13ULL, 99991ULL, 1000000007ULL}) {
        PolyOps<Zp64> ops{Zp64(p)};
        Rng rng(p ^ 0xabcdef);
        for (std::size_t n : {10, 150, 400, 1200}) {
            auto a = random_poly(ops, rng, n);
            auto b = random_poly(ops, rng, n / 2 + 1);
            auto common = random_poly(ops, rng, n / 3 + 2);
            if (!common.empty()) {
                a = ops.mul(a, common);
                b = ops.mul(b, common);
            }
            CHECK(ops.gcd(a, b) == ops.gcd_classical(a, b));
        }
    }
}

TEST_CASE("gcd output divides inputs and is divided by common divisors") {
    PolyOps<Zp64> ops{Zp64(101)};
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_poly(ops, rng, 60);
        auto b = random_poly(ops, rng, 45);
        auto c = random_poly(ops, rng, 12);
        a = ops.mul(a, c);
        b = ops.mul(b, c);
        auto d = ops.gcd(a, b);
        if (a.empty() && b.empty()) continue;
        CHECK(ops.divides(d, a));
        CHECK(ops.divides(d, b));
        if (!c.empty()) CHECK(ops.divides(c, d));
    }
}

TEST_CASE("sparse-modulus powers of x") {
    PolyOps<Zp64> ops{Zp64(13)};
    // f = x^2 + 1: x^12 mod f = 1
    auto f = ops.make_sparse_mod({{0, 1}, {2, 1}});
    CHECK(ops.powx_mod(12, f) == PolyOps<Zp64>::Poly{1});
    // deg f > N: unchanged
    CHECK(ops.powx_mod(1, f) == PolyOps<Zp64>::Poly{0, 1});
    // f = x - 1 over F_7: x^5 mod f = 1
    PolyOps<Zp64> ops7{Zp64(7)};
    auto lin = ops7.make_sparse_mod({{0, 6}, {1, 1}});
    CHECK(ops7.powx_mod(5, lin) == PolyOps<Zp64>::Poly{1});
}

TEST_CASE("powx_mod equals naive repeated multiplication") {
    PolyOps<Zp64> ops{Zp64(101)};
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto fd = random_poly(ops, rng, 9);
        if (ops.deg(fd) < 1) continue;
        std::vector<std::pair<std::size_t, u64>> terms;
        for (std::size_t i = 0; i < fd.size(); ++i)
            if (fd[i]) terms.emplace_back(i, fd[i]);
        auto f = ops.make_sparse_mod(terms);
        PolyOps<Zp64>::Poly x{0, 1}, cur{1};
        for (unsigned n = 0; n <= 64; ++n) {
            CHECK(ops.powx_mod(n, f) == cur);
            cur = ops.rem(ops.mul(cur, x), fd);
        }
    }
}

TEST_CASE("derivative and eval") {
    PolyOps<Zp64> ops{Zp64(13)};
    PolyOps<Zp64>::Poly f{1, 2, 1};  // (x+1)^2
    CHECK(ops.derivative(f) == PolyOps<Zp64>::Poly{2, 2});
    CHECK(ops.eval(f, 12) == 0);
    CHECK(ops.eval(f, 1) == 4);
    PolyOps<Zp64> ops3{Zp64(3)};
    PolyOps<Zp64>::Poly cube{1, 0, 0, 1};  // x^3 + 1 over F_3
    CHECK(ops3.derivative(cube).empty());
}

TEST_CASE("root extraction via randomized splitting") {
    PolyOps<Zp64> ops{Zp64(101)};
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        // product of distinct linear factors with known roots
        std::vector<u64> want;
        PolyOps<Zp64>::Poly f{1};
        for (u64 r : std::vector<u64>{3, 50, 77, 98, u64(5 + trial)}) {
            if (std::find(want.begin(), want.end(), r) != want.end()) continue;
            want.push_back(r);
            f = ops.mul(f, {ops.fld.neg(r), 1});
        }
        Rng splitrng(trial);
        auto got = ops.roots(f, splitrng);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
    // rootless polynomial: x^2 + 1 over F_103 (103 = 3 mod 4)
    PolyOps<Zp64> o103{Zp64(103)};
    Rng r2(5);
    CHECK(o103.roots({1, 0, 1}, r2).empty());
}

TEST_CASE("radical strips repeated factors") {
    PolyOps<Zp64> ops{Zp64(13)};
    PolyOps<Zp64>::Poly sq{1, 2, 1};  // (x+1)^2
    CHECK(ops.radical(sq) == PolyOps<Zp64>::Poly{1, 1});
}
