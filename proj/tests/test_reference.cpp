#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sublin/reference.hpp"

using namespace sublin;

TEST_CASE("brute roots examples") {
    PrimeField F13(13);
    SparsePoly f = parse_poly("1 + x - x^2 - x^3", F13);
    CHECK(brute_roots(f) == std::vector<Int>{1, 12});
    CHECK(brute_roots(SparsePoly(F13, {{5, 0}})).empty());
    CHECK(brute_roots(parse_poly("x", F13)) == std::vector<Int>{0});
}

TEST_CASE("brute roots ceiling is configurable") {
    PrimeField huge{Int("100000007")};
    SparsePoly f = parse_poly("1 + x", huge);
    CHECK_THROWS_AS(brute_roots(f), capability_error);
    OracleConfig saved = oracle_config();
    oracle_config().brute_roots_ceiling = Int("200000000");
    PrimeField small(13);
    CHECK(brute_roots(parse_poly("1 + x", small)) == std::vector<Int>{12});
    oracle_config() = saved;
}

TEST_CASE("brute common roots examples") {
    PrimeField F7(7);
    SparsePoly a = parse_poly("x^2 - 1", F7);   // roots {1, 6}
    SparsePoly b = parse_poly("x^2 + x - 2", F7);  // roots {1, 5}
    CHECK(brute_roots(a) == std::vector<Int>{1, 6});
    CHECK(brute_roots(b) == std::vector<Int>{1, 5});
    CHECK(brute_common_roots({a, b}) == std::vector<Int>{1});
    CHECK(brute_common_roots({parse_poly("x - 1", F7), parse_poly("x - 2", F7)}).empty());
    CHECK(brute_common_roots({a}) == brute_roots(a));
}

TEST_CASE("brute multiplier SVP examples") {
    BruteSvp r = brute_multiplier_svp({3, 5}, 16);
    CHECK(r.e == 6);
    CHECK(r.m == std::vector<Int>{2, -2});
    CHECK(r.norm_sq == 8);

    BruteSvp one = brute_multiplier_svp({1}, 100);
    CHECK(one.e == 1);
    CHECK(one.m == std::vector<Int>{1});

    BruteSvp three = brute_multiplier_svp({1, 2, 3}, 12);
    CHECK(three.e == 1);
    CHECK(three.m == std::vector<Int>{1, 2, 3});
    CHECK(three.norm_sq == 14);

    CHECK_THROWS_AS(brute_multiplier_svp({1}, Int("1000000")), capability_error);
}

TEST_CASE("oracles are deterministic") {
    PrimeField F(997);
    Rng rng(404);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::pair<Int, Int>> raw;
        for (int i = 0; i < 4; ++i) raw.emplace_back(rng.below(997), rng.below(996));
        SparsePoly f(F, raw);
        if (f.is_zero()) continue;
        CHECK(brute_roots(f) == brute_roots(f));
    }
    CHECK(brute_multiplier_svp({7, 11, 13}, 9973).e ==
          brute_multiplier_svp({7, 11, 13}, 9973).e);
}
