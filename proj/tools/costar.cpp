// Command-line driver: verification suites, cohomology reports, HKR and
// bracket utilities, star-product build/verify. stdout carries data (canonical
// key-sorted JSON), stderr carries logs. Exit codes: 0 success, 1 verification
// failure, 2 obstruction found, 3 parse/usage error.

#include "costar/cohomology.hpp"
#include "costar/formality.hpp"
#include "costar/hkr.hpp"
#include "costar/serialization.hpp"
#include "costar/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace costar;

namespace {

Json read_json_arg(const std::string &path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return Json::parse(ss.str());
    }
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const Json &j) { std::cout << j.dump(2) << "\n"; }

Bimodule parse_bimodule(const std::string &s) {
    if (s == "A")
        return Bimodule::MA;
    if (s == "B")
        return Bimodule::MB;
    if (s == "DAB")
        return Bimodule::MDAB;
    if (s == "DBB")
        return Bimodule::MDBB;
    if (s == "DIB")
        return Bimodule::MDIB;
    throw CLI::ValidationError("--bimodule", "expected one of A|B|DAB|DBB|DIB");
}

Json koszul_cochain_to_json(const KoszulCochain &x) {
    Json terms = Json::array();
    for (const auto &[s, sym] : x.terms())
        for (const auto &[j, c] : sym.terms) {
            Json mask = Json::array();
            for (int cc = 1; cc <= x.config().n; ++cc)
                if (mask_has(s, cc))
                    mask.push_back(cc);
            Json jj = Json::array();
            for (int cc = 1; cc <= x.config().n; ++cc)
                for (uint32_t q = 0; q < j.o[cc - 1]; ++q)
                    jj.push_back(cc);
            terms.push_back({{"S", mask}, {"J", jj}, {"coeff", poly_to_json(c)}});
        }
    return terms;
}

int run_verify(const std::string &suite, uint64_t seed, int cases) {
    SuiteParams params;
    params.seed = seed;
    params.cases = cases;
    std::vector<std::string> names;
    if (suite == "all") {
        for (const auto &[n, fn] : suite_registry())
            names.push_back(n);
    } else {
        if (!suite_registry().count(suite)) {
            std::cerr << "unknown suite: " << suite << "\n";
            return 3;
        }
        names.push_back(suite);
    }
    Json report;
    report["seed"] = seed;
    report["cases_per_suite"] = cases;
    Json suites_json = Json::array();
    size_t total_failures = 0;
    for (const auto &n : names) {
        SuiteResult res = suite_registry().at(n)(params);
        Json s;
        s["suite"] = res.name;
        s["cases"] = res.cases;
        s["failures"] = res.failures;
        suites_json.push_back(s);
        total_failures += res.failures.size();
        std::cerr << (res.passed() ? "[pass] " : "[FAIL] ") << res.name << " ("
                  << res.cases << " cases)\n";
    }
    report["suites"] = suites_json;
    report["total_failures"] = total_failures;
    emit(report);
    return total_failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"adapted deformation-quantization calculus on R^n, C = R^{n-l}"};
    app.require_subcommand(1);

    // verify ----------------------------------------------------------------
    auto *verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite = "all";
    uint64_t seed = 1;
    int cases = 50;
    verify->add_option("--suite", suite, "suite name or 'all'")->envname("CFK_SUITE");
    verify->add_option("--seed", seed, "random seed")->envname("CFK_SEED");
    verify->add_option("--cases", cases, "randomized cases per suite")->envname("CFK_CASES");

    // cohomology ------------------------------------------------------------
    auto *coh = app.add_subcommand("cohomology", "truncated Koszul cochain cohomology");
    std::string bimodule = "A";
    int degree = 0, cn = 2, cl = 1;
    CohomologyCaps caps;
    coh->add_option("--bimodule", bimodule, "A|B|DAB|DBB|DIB")->required();
    coh->add_option("--degree", degree, "exterior degree k")->required();
    coh->add_option("--poly-deg", caps.poly_deg, "coefficient degree cap")
        ->envname("CFK_POLY_DEG");
    coh->add_option("--op-order", caps.op_order, "operator order cap")
        ->envname("CFK_OP_ORDER");
    coh->add_option("--n", cn, "ambient dimension");
    coh->add_option("--l", cl, "codimension");

    // hkr -------------------------------------------------------------------
    auto *hkr = app.add_subcommand("hkr", "HKR maps and constructive primitives");
    std::string hkr_op, hkr_input = "-";
    hkr->add_option("op", hkr_op, "psi|psi1|pi|primitive|decompose")->required();
    hkr->add_option("--input", hkr_input, "JSON input file or '-' for stdin");

    // bracket ---------------------------------------------------------------
    auto *bracket = app.add_subcommand("bracket", "Schouten / Gerstenhaber brackets");
    std::string br_kind, br_x, br_y;
    bracket->add_option("kind", br_kind, "schouten|gerstenhaber|wedge|cup")->required();
    bracket->add_option("--x", br_x, "first operand JSON file")->required();
    bracket->add_option("--y", br_y, "second operand JSON file")->required();

    // star ------------------------------------------------------------------
    auto *star = app.add_subcommand("star", "adapted star products");
    star->require_subcommand(1);
    auto *star_build = star->add_subcommand("build", "order-by-order Maurer-Cartan build");
    std::string poisson_path;
    int order = 2;
    bool require_adapted = false;
    star_build->add_option("--poisson", poisson_path, "Poisson bivector JSON")->required();
    star_build->add_option("--order", order, "truncation order N");
    star_build->add_flag("--require-adapted", require_adapted,
                         "insist on an adapted structure and product");
    auto *star_verify = star->add_subcommand("verify", "check the star-product axioms");
    std::string product_path, poisson_path2;
    star_verify->add_option("--product", product_path, "star product JSON")->required();
    star_verify->add_option("--poisson", poisson_path2, "Poisson bivector JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 3;
    }

    try {
        if (*verify)
            return run_verify(suite, seed, cases);

        if (*coh) {
            SpaceConfig cfg(cn, cl);
            auto res = truncated_cohomology(cfg, parse_bimodule(bimodule), degree, caps);
            Json out;
            out["bimodule"] = bimodule;
            out["degree"] = degree;
            out["n"] = cn;
            out["l"] = cl;
            out["polyDeg"] = caps.poly_deg;
            out["opOrder"] = caps.op_order;
            out["dims"] = {{"space", res.dim_space},
                           {"kernel", res.dim_kernel},
                           {"image", res.rank_in},
                           {"cohomology", res.dim}};
            Json reps = Json::array();
            for (const auto &rep : res.representatives)
                reps.push_back(koszul_cochain_to_json(rep));
            out["basisRepresentatives"] = reps;
            emit(out);
            return 0;
        }

        if (*hkr) {
            Json in = read_json_arg(hkr_input);
            if (hkr_op == "psi" || hkr_op == "psi1") {
                MultiVec x = multivec_from_json(in);
                emit(diffop_to_json(hkr_op == "psi" ? psi_hkr(x) : psi1_hkr(x)));
                return 0;
            }
            if (hkr_op == "pi") {
                emit(multivec_to_json(pi_hkr(diffop_from_json(in))));
                return 0;
            }
            if (hkr_op == "primitive") {
                try {
                    emit(diffop_to_json(primitive(diffop_from_json(in))));
                    return 0;
                } catch (const NotExact &e) {
                    Json out;
                    out["error"] = "NotExact";
                    out["class"] = multivec_to_json(e.cls);
                    emit(out);
                    return 2;
                }
            }
            if (hkr_op == "decompose") {
                HkrDecomposition d = decompose(diffop_from_json(in));
                Json out;
                out["harmonic"] = multivec_to_json(d.harmonic);
                out["primitive"] = diffop_to_json(d.primitive);
                emit(out);
                return 0;
            }
            std::cerr << "unknown hkr operation: " << hkr_op << "\n";
            return 3;
        }

        if (*bracket) {
            Json jx = read_json_arg(br_x), jy = read_json_arg(br_y);
            if (br_kind == "schouten")
                emit(multivec_to_json(schouten(multivec_from_json(jx), multivec_from_json(jy))));
            else if (br_kind == "wedge")
                emit(multivec_to_json(wedge(multivec_from_json(jx), multivec_from_json(jy))));
            else if (br_kind == "gerstenhaber")
                emit(diffop_to_json(gerst_bracket(diffop_from_json(jx), diffop_from_json(jy))));
            else if (br_kind == "cup")
                emit(diffop_to_json(cup(diffop_from_json(jx), diffop_from_json(jy))));
            else {
                std::cerr << "unknown bracket kind: " << br_kind << "\n";
                return 3;
            }
            return 0;
        }

        if (*star) {
            if (*star_build) {
                MultiVec p = multivec_from_json(read_json_arg(poisson_path));
                auto res = mc_build(p, order, require_adapted);
                if (std::holds_alternative<ObstructionReport>(res)) {
                    emit(obstruction_to_json(std::get<ObstructionReport>(res)));
                    return 2;
                }
                emit(star_to_json(std::get<StarProduct>(res)));
                return 0;
            }
            if (*star_verify) {
                StarProduct s = star_from_json(read_json_arg(product_path));
                MultiVec p = multivec_from_json(read_json_arg(poisson_path2));
                StarCheckReport rep = verify_star(s, p);
                Json out;
                out["checks"] = {{"antisymmetrizationIsPoisson", rep.antisym_is_poisson},
                                 {"associative", rep.associative},
                                 {"unital", rep.unital},
                                 {"adapted", rep.adapted}};
                out["failures"] = rep.failures;
                emit(out);
                return rep.all_passed() ? 0 : 1;
            }
        }
    } catch (const NotPoisson &e) {
        std::cerr << "NotPoisson: " << e.what() << "\n";
        return 3;
    } catch (const NotAdapted &e) {
        std::cerr << "NotAdapted: " << e.what() << "\n";
        return 3;
    } catch (const NotACocycle &e) {
        std::cerr << "NotACocycle: " << e.what() << "\n";
        return 3;
    } catch (const Json::exception &e) {
        std::cerr << "JSON error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
