#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sublin/bench.hpp"
#include "sublin/multisystem.hpp"
#include "sublin/reference.hpp"
#include "sublin/resultant.hpp"
#include "sublin/rootdetect.hpp"
#include "sublin/slpenc.hpp"

using namespace sublin;
using nlohmann::json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitMath = 66;

std::string dec(const Int& v) { return v.get_str(); }

json coset_json(const std::vector<Coset>& cs) {
    json out = json::array();
    for (const Coset& c : cs)
        out.push_back({{"representative", dec(c.representative)},
                       {"subgroup_order", dec(c.subgroup_order)}});
    return out;
}

json dense_json(const DensePoly& f) {
    json out = json::array();
    for (const Int& c : f) out.push_back(dec(c));
    return out;
}

Int parse_int(const std::string& s) {
    Int v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw parse_error("expected a decimal integer", 0);
    return v;
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
    if (out.empty()) throw parse_error("expected a comma-separated integer list", 0);
    return out;
}

PrimeField make_field(const std::string& p) { return PrimeField{parse_int(p)}; }

void apply_env_overrides() {
    if (const char* v = std::getenv("SUBLIN_BRUTE_ROOTS_CEILING"))
        oracle_config().brute_roots_ceiling = parse_int(v);
    if (const char* v = std::getenv("SUBLIN_BRUTE_SVP_CEILING"))
        oracle_config().brute_svp_ceiling = parse_int(v);
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int emit_bench(unsigned t, const std::vector<Int>& qs, unsigned trials, u64 seed,
               const std::string& format, const Int& brute_cutoff) {
    BenchResult res = run_bench(t, qs, trials, seed, brute_cutoff);
    if (format == "json") {
        json jr = json::array();
        for (const BenchRow& r : res.rows)
            jr.push_back({{"q", dec(r.q)},
                          {"t", r.t},
                          {"delta", dec(r.delta)},
                          {"time_detect_ns", r.time_detect_ns},
                          {"time_brute_ns", r.time_brute_ns}});
        emit({{"rows", jr}, {"e_hat", res.e_hat}});
    } else {
        std::cout << "q,t,delta,time_detect_ns,time_brute_ns\n";
        for (const BenchRow& r : res.rows)
            std::cout << dec(r.q) << "," << r.t << "," << dec(r.delta) << ","
                      << r.time_detect_ns << "," << r.time_brute_ns << "\n";
        std::cout << "# e_hat " << res.e_hat << "\n";
    }
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse polynomial solvability over prime fields"};
    app.require_subcommand(1);

    std::string p_str, poly_str, f_str, g_str, n_str, exps_str, kind, in_path;
    std::vector<std::string> polys;
    std::string q_list_str, format = "json";
    u64 seed = 0;
    unsigned t_arg = 3, trials = 3;
    std::string brute_cutoff_str = "20000000";
    bool decision_only = false, verify = false;
    std::string d_str = "-1", dp_str = "-1";

    auto* det = app.add_subcommand("detect-root", "Decide solvability of a sparse polynomial");
    det->add_option("--p", p_str, "prime modulus (decimal)")->required();
    det->add_option("--poly", poly_str, "polynomial text")->required();
    det->add_option("--seed", seed, "RNG seed");
    det->add_flag("--decision-only", decision_only, "skip structure collection");

    auto* com = app.add_subcommand("common-factor", "Decide a common linear factor of k polynomials");
    com->add_option("--p", p_str)->required();
    com->add_option("--poly", polys, "polynomial text (repeat for each)")->required();
    com->add_option("--seed", seed);

    auto* red = app.add_subcommand("reduce-exponents", "Lattice exponent reduction");
    red->add_option("--N", n_str, "subgroup order (decimal)")->required();
    red->add_option("--exps", exps_str, "comma-separated exponents")->required();

    auto* dis = app.add_subcommand("discriminant", "A-discriminant of a sparse polynomial");
    dis->add_option("--p", p_str)->required();
    dis->add_option("--poly", poly_str)->required();

    auto* res = app.add_subcommand("resultant", "Sylvester resultant of two dense polynomials");
    res->add_option("--p", p_str)->required();
    res->add_option("--f", f_str)->required();
    res->add_option("--g", g_str)->required();
    res->add_option("--d", d_str, "declared degree of f (default: actual)");
    res->add_option("--dprime", dp_str, "declared degree of g (default: actual)");

    auto* gad = app.add_subcommand("gadget", "SAT-hardness gadgets");
    gad->add_option("--kind", kind, "pair | square")->required()
        ->check(CLI::IsMember({"pair", "square"}));
    gad->add_option("--p", p_str)->required();
    gad->add_option("--f", f_str)->required();
    gad->add_option("--g", g_str)->required();
    gad->add_option("--seed", seed);

    auto* slp = app.add_subcommand("circuit-to-slp", "Encode a Boolean circuit over GF(2^d)");
    slp->add_option("--in", in_path, "circuit JSON file")->required();
    slp->add_flag("--verify", verify, "brute-force the root/SAT equivalence (d <= 24)");

    auto* ora = app.add_subcommand("oracle", "Brute-force root oracle");
    ora->add_option("--p", p_str)->required();
    ora->add_option("--poly", polys, "polynomial text (repeatable)")->required();

    auto* ben = app.add_subcommand("bench", "Scaling benchmark (detect vs brute)");
    ben->add_option("--t", t_arg, "number of terms");
    ben->add_option("--q-list", q_list_str, "comma-separated primes")->required();
    ben->add_option("--trials", trials, "instances per prime");
    ben->add_option("--seed", seed);
    ben->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    ben->add_option("--brute-cutoff", brute_cutoff_str, "skip brute above this q (sentinel -1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        apply_env_overrides();

        if (det->parsed()) {
            PrimeField F = make_field(p_str);
            SparsePoly f = parse_poly(poly_str, F);
            RootStructure st = detect_root(f, seed, !decision_only);
            emit({{"has_root", st.has_root},
                  {"root_at_zero", st.root_at_zero},
                  {"all_nonzero_roots", st.all_nonzero_roots},
                  {"x_power_removed", dec(st.x_power_removed)},
                  {"delta", dec(st.delta)},
                  {"N", dec(st.N)},
                  {"e", dec(st.e)},
                  {"delta_prime", dec(st.delta_prime)},
                  {"gamma", dec(st.gamma)},
                  {"eta", st.eta},
                  {"root_count_bound", st.root_count_bound},
                  {"s1_order", dec(st.s1_order)},
                  {"s2_order", dec(st.s2_order)},
                  {"full_cosets", coset_json(st.full_cosets)},
                  {"isolated_cosets", coset_json(st.isolated_cosets)}});
            return st.has_root ? kExitYes : kExitNo;
        }

        if (com->parsed()) {
            PrimeField F = make_field(p_str);
            std::vector<SparsePoly> fs;
            for (const std::string& s : polys) fs.push_back(parse_poly(s, F));
            CommonFactorResult r = common_linear_factor(fs, seed);
            emit({{"exists", r.exists},
                  {"delta", dec(r.delta)},
                  {"delta_prime", dec(r.delta_prime)},
                  {"witness_gcd", dense_json(r.witness_gcd)}});
            return r.exists ? kExitYes : kExitNo;
        }

        if (red->parsed()) {
            Int N = parse_int(n_str);
            std::vector<Int> exps = parse_int_list(exps_str);
            ExponentReduction r = exponent_reduce(exps, N);
            json m = json::array();
            for (const Int& v : r.m) m.push_back(dec(v));
            emit({{"e", dec(r.e)},
                  {"m", m},
                  {"delta_prime", dec(r.delta_prime)},
                  {"norm_sq", dec(r.norm_sq)},
                  {"bound", r.bound}});
            return kExitYes;
        }

        if (dis->parsed()) {
            PrimeField F = make_field(p_str);
            SparsePoly f = parse_poly(poly_str, F);
            FieldElement ad = a_discriminant(f);
            json out{{"a_discriminant", dec(ad.value())}, {"is_zero", ad.is_zero()}};
            const auto& terms = f.terms();
            if (f.term_count() == 3 && terms[0].exp == 0 && gcd(terms[1].exp, terms[2].exp) == 1) {
                FieldElement c1(terms[0].coeff, F), c2(terms[1].coeff, F),
                    c3(terms[2].coeff, F);
                FieldElement tri =
                    trinomial_discriminant(c1, c2, c3, terms[1].exp, terms[2].exp);
                json tj{{"discriminant", dec(tri.value())}};
                DegenerateRoot dr =
                    trinomial_degenerate_root(c1, c2, c3, terms[1].exp, terms[2].exp);
                tj["degenerate"] = dr.kind == DegenerateRoot::none        ? "none"
                                   : dr.kind == DegenerateRoot::in_field ? "in_field"
                                                                         : "in_extension";
                if (dr.kind == DegenerateRoot::in_field) tj["zeta"] = dec(dr.zeta);
                out["trinomial"] = tj;
            }
            emit(out);
            return kExitYes;
        }

        if (res->parsed()) {
            PrimeField F = make_field(p_str);
            DensePoly fd = to_dense(parse_poly(f_str, F));
            DensePoly gd = to_dense(parse_poly(g_str, F));
            Int d = parse_int(d_str), dp = parse_int(dp_str);
            std::size_t dd = d < 0 ? (fd.empty() ? 0 : fd.size() - 1)
                                   : mpz_get_ui(d.get_mpz_t());
            std::size_t ddp = dp < 0 ? (gd.empty() ? 0 : gd.size() - 1)
                                     : mpz_get_ui(dp.get_mpz_t());
            FieldElement r = sylvester_resultant(F, fd, gd, dd, ddp);
            emit({{"resultant", dec(r.value())}, {"is_zero", r.is_zero()}});
            return kExitYes;
        }

        if (gad->parsed()) {
            PrimeField F = make_field(p_str);
            DensePoly fd = to_dense(parse_poly(f_str, F));
            DensePoly gd = to_dense(parse_poly(g_str, F));
            if (kind == "pair") {
                PairGadget r = pair_to_single_gadget(fd, gd, F, seed);
                emit({{"F", dense_json(r.F)}, {"chi", dec(r.chi)}});
            } else {
                SquareGadget r = square_gadget(fd, gd, F, seed);
                emit({{"H", dense_json(r.H)}, {"a", dec(r.a)}, {"b", dec(r.b)}});
            }
            return kExitYes;
        }

        if (slp->parsed()) {
            std::ifstream in(in_path);
            if (!in) throw math_error("circuit-to-slp: cannot open " + in_path);
            json cj = json::parse(in);
            Circuit c = circuit_from_json(cj);
            StraightLineProgram s = circuit_to_slp(c);
            json out = slp_to_json(s);
            int code = kExitYes;
            if (verify) {
                auto root = slp_root_bruteforce(s);
                out["satisfiable"] = root.has_value();
                if (root) out["root"] = root->coords();
                code = root ? kExitYes : kExitNo;
            }
            emit(out);
            return code;
        }

        if (ora->parsed()) {
            PrimeField F = make_field(p_str);
            std::vector<SparsePoly> fs;
            for (const std::string& s : polys) fs.push_back(parse_poly(s, F));
            std::vector<Int> roots =
                fs.size() == 1 ? brute_roots(fs[0]) : brute_common_roots(fs);
            json jr = json::array();
            for (const Int& r : roots) jr.push_back(dec(r));
            emit({{"roots", jr}});
            return roots.empty() ? kExitNo : kExitYes;
        }

        if (ben->parsed())
            return emit_bench(t_arg, parse_int_list(q_list_str), trials, seed, format,
                              parse_int(brute_cutoff_str));

        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    }
}
