#include "costar/serialization.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

using namespace costar;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(COSTAR_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE *pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    while (fgets(buf.data(), buf.size(), pipe))
        out += buf.data();
    int status = pclose(pipe);
    return CliResult{WEXITSTATUS(status), out};
}

std::string write_temp(const std::string &name, const Json &j) {
    std::string path = std::string("/tmp/costar_cli_") + name + ".json";
    std::ofstream out(path);
    out << j.dump();
    return path;
}

TEST(Cli, VerifySingleSuite) {
    CliResult r = run_cli("verify --suite schouten-jacobi --seed 7 --cases 10");
    EXPECT_EQ(r.exit_code, 0);
    Json rep = Json::parse(r.out);
    EXPECT_EQ(rep["total_failures"], 0);
}

TEST(Cli, VerifyUnknownSuiteExits3) {
    CliResult r = run_cli("verify --suite no-such-suite");
    EXPECT_EQ(r.exit_code, 3);
}

TEST(Cli, CohomologyReport) {
    CliResult r =
        run_cli("cohomology --bimodule DBB --degree 1 --n 2 --l 1 --poly-deg 2 --op-order 2");
    EXPECT_EQ(r.exit_code, 0);
    Json rep = Json::parse(r.out);
    // H^1(DBB) = B (x) Lambda^1 E'' with l = 1: dim = dim truncated B = 3
    EXPECT_EQ(rep["dims"]["cohomology"], 3);
}

TEST(Cli, Determinism) {
    const char *cmd = "verify --suite braces --seed 11 --cases 8";
    CliResult a = run_cli(cmd), b = run_cli(cmd);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out); // byte-identical for a fixed seed
}

TEST(Cli, HkrRoundTrip) {
    SpaceConfig cfg(2, 1);
    MultiVec x = MultiVec::basis(cfg, {1, 2});
    std::string in = write_temp("mv", multivec_to_json(x));
    CliResult r = run_cli("hkr psi1 --input " + in);
    ASSERT_EQ(r.exit_code, 0);
    Json out = Json::parse(r.out);
    PolyDiffOp op = diffop_from_json(out);
    EXPECT_EQ(op, psi1_hkr(x));
    // JSON round trip
    EXPECT_EQ(diffop_to_json(diffop_from_json(out)).dump(), out.dump());
}

TEST(Cli, StarBuildAndVerify) {
    SpaceConfig cfg(2, 1);
    MultiVec p(cfg, 2);
    p.add_term(3u, Poly(-1)); // P = dy ^ dx
    std::string pfile = write_temp("poisson", multivec_to_json(p));
    CliResult r = run_cli("star build --poisson " + pfile + " --order 2 --require-adapted");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    Json sj = Json::parse(r.out);
    std::string sfile = write_temp("product", sj);
    CliResult v = run_cli("star verify --product " + sfile + " --poisson " + pfile);
    EXPECT_EQ(v.exit_code, 0) << v.out;
}

TEST(Cli, StarBuildNotPoissonExits3) {
    SpaceConfig cfg(3, 1);
    MultiVec p(cfg, 2);
    p.add_term(3u, Poly::var(base_var(3)));
    p.add_term(5u, Poly::var(base_var(1)));
    ASSERT_FALSE(schouten(p, p).is_zero());
    std::string pfile = write_temp("notpoisson", multivec_to_json(p));
    CliResult r = run_cli("star build --poisson " + pfile + " --order 2");
    EXPECT_EQ(r.exit_code, 3);
}

TEST(Cli, BracketSchouten) {
    SpaceConfig cfg(2, 1);
    MultiVec x = MultiVec::basis(cfg, {1});
    MultiVec y = Poly::var(base_var(1)) * MultiVec::basis(cfg, {2});
    std::string fx = write_temp("bx", multivec_to_json(x));
    std::string fy = write_temp("by", multivec_to_json(y));
    CliResult r = run_cli("bracket schouten --x " + fx + " --y " + fy);
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(multivec_from_json(Json::parse(r.out)), schouten(x, y));
}

} // namespace
