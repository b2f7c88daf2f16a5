#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sublin/sparsepoly.hpp"

using namespace sublin;

TEST_CASE("canonicalization merges, reduces and sorts") {
    PrimeField F7(7);
    CHECK(canonicalize(F7, {{3, 2}, {4, 2}}).is_zero());
    PrimeField F13(13);
    SparsePoly f = canonicalize(F13, {{1, 0}, {1, 1}});
    REQUIRE(f.term_count() == 2);
    CHECK(f.terms()[0].coeff == 1);
    CHECK(f.terms()[0].exp == 0);
    CHECK(f.terms()[1].exp == 1);
    PrimeField F5(5);
    SparsePoly g = canonicalize(F5, {{6, 1}, {2, 0}});
    REQUIRE(g.term_count() == 2);
    CHECK(g.terms()[0].coeff == 2);
    CHECK(g.terms()[1].coeff == 1);
    CHECK_THROWS_AS(canonicalize(F5, {{1, -1}}), math_error);
}

TEST_CASE("canonicalization preserves the function") {
    PrimeField F(101);
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<Int, Int>> raw;
        for (int i = 0; i < 12; ++i)
            raw.emplace_back(rng.in_range(-50, 150), rng.below(10));
        SparsePoly f = canonicalize(F, raw);
        for (int k = 0; k < 5; ++k) {
            FieldElement x(rng.below(F.p()), F);
            FieldElement direct(0, F);
            for (const auto& [c, e] : raw) direct = direct + FieldElement(c, F) * x.pow(e);
            CHECK(f.eval(x) == direct);
        }
    }
}

TEST_CASE("evaluation examples") {
    PrimeField F5(5);
    SparsePoly f = canonicalize(F5, {{1, 0}, {1, 1}});
    CHECK(f.eval(FieldElement(4, F5)).is_zero());
    PrimeField F13(13);
    SparsePoly g = canonicalize(F13, {{1, 0}, {1, 1}, {-1, 2}, {-1, 3}});
    CHECK(g.eval(FieldElement(1, F13)).is_zero());
    CHECK(g.eval(FieldElement(12, F13)).is_zero());
    CHECK(!g.eval(FieldElement(2, F13)).is_zero());
}

TEST_CASE("huge exponents round-trip and evaluate") {
    PrimeField F13(13);
    Int a2 = (Int(1) << 200) + 26, a3 = a2 + 1;
    SparsePoly f = canonicalize(F13, {{1, 0}, {1, 1}, {1, a2}, {1, a3}});
    CHECK(f.degree() == a3);
    // exponents reduce mod p-1 = 12 at evaluation time: a2 = 2^200+26 ≡ 4+2 = 6 mod 12?
    Int e2 = a2 % 12, e3 = a3 % 12;
    SparsePoly red = canonicalize(F13, {{1, 0}, {1, 1}, {1, e2}, {1, e3}});
    for (Int x = 1; x < 13; ++x)
        CHECK(f.eval(FieldElement(x, F13)) == red.eval(FieldElement(x, F13)));
}

TEST_CASE("mod_pow_x examples") {
    PrimeField F13(13);
    SparsePoly f = canonicalize(F13, {{1, 0}, {1, 2}});  // x^2 + 1
    CHECK(mod_pow_x(12, f) == DensePoly{1});
    CHECK(mod_pow_x(1, f) == DensePoly{0, 1});  // deg f > N: unchanged
    PrimeField F7(7);
    SparsePoly lin = canonicalize(F7, {{-1, 0}, {1, 1}});  // x - 1
    CHECK(mod_pow_x(5, lin) == DensePoly{1});
    SparsePoly cst = canonicalize(F7, {{3, 0}});
    CHECK_THROWS_AS(mod_pow_x(5, cst), math_error);
}

TEST_CASE("mod_pow_x equals naive repeated multiplication") {
    PrimeField F(97);
    Rng rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<std::pair<Int, Int>> raw;
        for (int i = 0; i < 4; ++i) raw.emplace_back(rng.in_range(1, 97), rng.below(9));
        raw.emplace_back(1, 9);
        SparsePoly f = canonicalize(F, raw);
        DensePoly fd = to_dense(f);
        DensePoly cur{1};
        for (unsigned n = 0; n <= 64; ++n) {
            CHECK(mod_pow_x(n, f) == cur);
            cur = poly_divmod(F, poly_mul(F, cur, {0, 1}), fd).second;
        }
    }
}

TEST_CASE("poly_gcd examples") {
    PrimeField F7(7);
    DensePoly f{6, 0, 1};  // x^2 - 1
    DensePoly g{5, 1, 1};  // x^2 + x - 2
    CHECK(poly_gcd(F7, f, g) == DensePoly{6, 1});
    CHECK(poly_gcd(F7, f, {}) == DensePoly{6, 0, 1});  // monic already
    PrimeField F13(13);
    CHECK(poly_gcd(F13, {1, 0, 1}, {2, 0, 1}) == DensePoly{1});
    CHECK_THROWS_AS(poly_gcd(F13, {}, {0, 0}), math_error);
}

TEST_CASE("root_in_subgroup examples") {
    PrimeField F13(13);
    SparsePoly f = canonicalize(F13, {{1, 0}, {1, 2}});  // x^2 + 1; roots 5, 8
    auto [r12, g12] = root_in_subgroup(f, 12);
    CHECK(r12);
    CHECK(g12.size() == 3);  // whole of x^2 + 1
    auto [r4, g4] = root_in_subgroup(f, 4);
    CHECK(r4);
    auto [r3, g3] = root_in_subgroup(f, 3);
    CHECK(!r3);
    CHECK_THROWS_AS(root_in_subgroup(f, 5), math_error);
}

TEST_CASE("root_in_subgroup agrees with brute enumeration") {
    for (unsigned long pp : {11UL, 101UL, 499UL}) {
        PrimeField F{Int(pp)};
        Rng rng(pp);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<std::pair<Int, Int>> raw{{rng.in_range(1, F.p()), 0}};
            for (int i = 0; i < 3; ++i)
                raw.emplace_back(rng.in_range(1, F.p()), rng.in_range(1, 20));
            SparsePoly f = canonicalize(F, raw);
            if (f.degree() < 1) continue;
            bool brute = false;
            for (Int x = 1; x < F.p(); ++x)
                if (f.eval(FieldElement(x, F)).is_zero()) {
                    brute = true;
                    break;
                }
            CHECK(root_in_subgroup(f, F.p() - 1).first == brute);
        }
    }
}

TEST_CASE("derivative examples") {
    PrimeField F3(3);
    CHECK(canonicalize(F3, {{1, 3}, {1, 0}}).derivative().is_zero());
    PrimeField F13(13);
    SparsePoly d = canonicalize(F13, {{1, 2}, {2, 1}, {1, 0}}).derivative();
    REQUIRE(d.term_count() == 2);
    CHECK(d.terms()[0].coeff == 2);
    CHECK(d.terms()[1].coeff == 2);
    PrimeField F7(7);
    CHECK(canonicalize(F7, {{1, 0}, {1, 7}}).derivative().is_zero());
}

TEST_CASE("squarefree_test examples") {
    PrimeField F7(7);
    CHECK(!squarefree_test(F7, {1, 2, 1}));  // (x+1)^2
    PrimeField F13(13);
    CHECK(squarefree_test(F13, {1, 0, 1}));
    PrimeField F3(3);
    CHECK(!squarefree_test(F3, {1, 0, 0, 1}));  // (x+1)^3, derivative vanishes
    CHECK_THROWS_AS(squarefree_test(F7, {5}), math_error);
}

TEST_CASE("squarefree_test against root-multiplicity counting") {
    PrimeField F(31);
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        // build products of random linear factors, some repeated
        DensePoly f{rng.in_range(1, F.p())};
        std::map<Int, int> mult;
        int nfac = 2 + static_cast<int>(rng.below(5).get_ui());
        for (int i = 0; i < nfac; ++i) {
            Int r = rng.below(F.p());
            mult[r]++;
            f = poly_mul(F, f, {(F.p() - r) % F.p(), 1});
        }
        bool repeated = std::any_of(mult.begin(), mult.end(),
                                    [](const auto& kv) { return kv.second > 1; });
        CHECK(squarefree_test(F, f) == !repeated);
    }
}

TEST_CASE("laurent polynomials and shift normalization") {
    PrimeField F13(13);
    LaurentPoly f(F13, {{1, -3}, {2, 0}, {1, 2}});
    CHECK(f.shift() == -3);
    SparsePoly n = f.normalized();
    REQUIRE(n.term_count() == 3);
    CHECK(n.terms()[0].exp == 0);
    CHECK(n.terms()[2].exp == 5);
    LaurentPoly g(F13, {{1, 0}, {1, 4}});
    CHECK(g.shift() == 0);  // no negative exponents: identity shift
    LaurentPoly z(F13, {{13, -5}});
    CHECK(z.is_zero());
}

TEST_CASE("text parsing") {
    PrimeField F13(13);
    SparsePoly f = parse_poly("1 + x - x^2 - x^3", F13);
    REQUIRE(f.term_count() == 4);
    CHECK(f.eval(FieldElement(1, F13)).is_zero());
    SparsePoly g = parse_poly("  5*x^200 + 3 ", F13);
    CHECK(g.degree() == 200);
    SparsePoly h = parse_poly("2x", F13);  // '*' optional
    CHECK(h.terms()[0].coeff == 2);
    SparsePoly big = parse_poly("x^1606938044258990275541962092341162602522202993782792835301402", F13);
    CHECK(big.degree() == (Int(1) << 200) + 26);
    CHECK_THROWS_AS(parse_poly("", F13), parse_error);
    CHECK_THROWS_AS(parse_poly("x^", F13), parse_error);
    CHECK_THROWS_AS(parse_poly("3 +", F13), parse_error);
    CHECK_THROWS_AS(parse_poly("x + + x", F13), parse_error);
    CHECK_THROWS_AS(parse_poly("y", F13), parse_error);
    try {
        parse_poly("1 + ?", F13);
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.pos == 4);
    }
}

TEST_CASE("format and parse round trip") {
    PrimeField F(997);
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<Int, Int>> raw;
        for (int i = 0; i < 5; ++i)
            raw.emplace_back(rng.in_range(1, F.p()), rng.below(Int(1) << 80));
        SparsePoly f = canonicalize(F, raw);
        SparsePoly g = parse_poly(format_poly(f), F);
        REQUIRE(f.term_count() == g.term_count());
        for (std::size_t i = 0; i < f.term_count(); ++i) {
            CHECK(f.terms()[i].coeff == g.terms()[i].coeff);
            CHECK(f.terms()[i].exp == g.terms()[i].exp);
        }
    }
    CHECK(format_poly(canonicalize(F, {})) == "0");
}

TEST_CASE("json round trip") {
    PrimeField F13(13);
    SparsePoly f = parse_poly("1 + x - x^2 - x^3", F13);
    nlohmann::json j = poly_to_json(f);
    CHECK(j["p"] == "13");
    CHECK(j["terms"][2][0] == "12");
    SparsePoly g = poly_from_json(j);
    CHECK(poly_to_json(g) == j);
}
