#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

const char* cli_bin() {
    const char* bin = std::getenv("SUBLIN_CLI_BIN");
#ifdef SUBLIN_CLI_BIN
    if (!bin) bin = SUBLIN_CLI_BIN;
#endif
    return bin;
}

RunResult run(const std::string& args) {
    const char* bin = cli_bin();
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("detect-root JSON schema and exit codes") {
    RunResult r = run("detect-root --p 13 --poly \"1 + x - x^2 - x^3\"");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    for (const char* key :
         {"has_root", "root_at_zero", "all_nonzero_roots", "x_power_removed", "delta", "N", "e",
          "delta_prime", "gamma", "eta", "root_count_bound", "s1_order", "s2_order",
          "full_cosets", "isolated_cosets"})
        CHECK(j.contains(key));
    CHECK(j["has_root"] == true);
    // the isolated cosets at delta = delta' = 1 are exactly the roots {1, 12}
    REQUIRE(j["isolated_cosets"].size() == 2);
    CHECK(j["isolated_cosets"][0]["representative"] == "1");
    CHECK(j["isolated_cosets"][1]["representative"] == "12");

    CHECK(run("detect-root --p 13 --poly \"5\"").exit_code == 3);
}

TEST_CASE("reduce-exponents example") {
    RunResult r = run("reduce-exponents --N 16 --exps 3,5");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["e"] == "6");
    CHECK(j["m"] == nlohmann::json::array({"2", "-2"}));
    CHECK(j["delta_prime"] == "2");
    CHECK(j["norm_sq"] == "8");
}

TEST_CASE("malformed polynomial exits 65") {
    CHECK(run("detect-root --p 13 --poly \"1 + ?\"").exit_code == 65);
    CHECK(run("detect-root --p 13 --poly \"x^\"").exit_code == 65);
}

TEST_CASE("usage errors exit 64+") {
    CHECK(run("detect-root --p 13").exit_code >= 64);
    CHECK(run("no-such-command").exit_code >= 64);
    CHECK(run("gadget --kind nope --p 13 --f x --g x").exit_code >= 64);
}

TEST_CASE("identical seeds give byte-identical output") {
    std::string cmd = "common-factor --p 997 --poly \"1 + x + x^5\" --poly \"2 + x^3\" --seed 9";
    RunResult a = run(cmd), b = run(cmd);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
    std::string g = "gadget --kind square --p 101 --f \"1+x\" --g \"2+x^2\" --seed 4";
    CHECK(run(g).out == run(g).out);
}

TEST_CASE("oracle and common-factor decisions") {
    RunResult r = run("oracle --p 7 --poly \"x^2 - 1\" --poly \"x^2 + x - 2\"");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["roots"] == nlohmann::json::array({"1"}));
    CHECK(run("oracle --p 7 --poly \"3\"").exit_code == 3);
    CHECK(run("common-factor --p 13 --poly \"x - 1\" --poly \"x - 2\"").exit_code == 3);
}

TEST_CASE("discriminant and resultant output") {
    RunResult r = run("discriminant --p 13 --poly \"1 + 3x + x^2\"");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.contains("a_discriminant"));
    CHECK(j["trinomial"]["discriminant"] == "5");  // 9 - 4 mod 13

    RunResult s = run("resultant --p 13 --f \"x - 2\" --g \"x - 5\"");
    CHECK(nlohmann::json::parse(s.out)["resultant"] == "3");
}

TEST_CASE("circuit-to-slp verify") {
    const char* tmp = "cli_test_circuit.json";
    {
        std::ofstream f(tmp);
        f << R"({"d":2,"gates":[{"op":"AND","args":[0,1]}],"output":2})";
    }
    RunResult r = run(std::string("circuit-to-slp --in ") + tmp + " --verify");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["satisfiable"] == true);
    CHECK(j["root"] == 3);
    {
        std::ofstream f(tmp);
        f << R"({"d":1,"gates":[{"op":"NOT","args":[0]},{"op":"AND","args":[0,1]}],"output":2})";
    }
    CHECK(run(std::string("circuit-to-slp --in ") + tmp + " --verify").exit_code == 3);
    std::remove(tmp);
}

TEST_CASE("bench CSV schema") {
    RunResult r = run("bench --t 3 --q-list 101,499 --trials 1 --seed 1 --format csv "
                      "--brute-cutoff 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("q,t,delta,time_detect_ns,time_brute_ns\n", 0) == 0);
    CHECK(r.out.find("101,3,1,") != std::string::npos);
    CHECK(r.out.find("499,3,1,") != std::string::npos);
    CHECK(r.out.find(",-1\n") != std::string::npos);  // brute skipped above cutoff
    CHECK(r.out.find("# e_hat ") != std::string::npos);
    CHECK(run("bench --t 3 --q-list 100 --trials 1").exit_code == 66);  // non-prime q

    RunResult j = run("bench --t 3 --q-list 101 --trials 1 --seed 1 --format json");
    nlohmann::json parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.contains("rows"));
    CHECK(parsed.contains("e_hat"));
    CHECK(parsed["rows"][0].contains("time_detect_ns"));
}

TEST_CASE("oracle ceiling env override") {
    const char* bin = cli_bin();
    REQUIRE(bin != nullptr);
    std::string cmd = std::string("SUBLIN_BRUTE_ROOTS_CEILING=5 ") + bin +
                      " oracle --p 13 --poly \"x - 1\" 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 256> buf;
    while (fread(buf.data(), 1, buf.size(), p)) {
    }
    CHECK(WEXITSTATUS(pclose(p)) == 66);  // ceiling lowered below p
}
