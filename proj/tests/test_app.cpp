#include "purity/app.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

using namespace purity_bounds;
using namespace purity_bounds::app;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

JcConfig small_jc() {
    JcConfig c;
    c.spin_j = 2.0;
    c.n_max = 16;
    c.alpha = {1.5, 0.0};
    c.t_max = 6.0;
    c.steps = 60;
    return c;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("purity_app_" + name);
    std::ofstream(p) << content;
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PURITY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kCoupledExample = R"({"d1": 1, "d2": 1, "A": [[[0, 1], [0.3, 0]], [[0.3, 0], [0, 1]]]})";

}  // namespace

// ---------------------------------- config -----------------------------------

TEST(Config, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -2.5e17}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(1.0), "1");
}

TEST(Config, ComplexParsing) {
    EXPECT_EQ(parse_complex(json::parse("[1.5, -2]")), cplx(1.5, -2.0));
    EXPECT_EQ(parse_complex(json::parse("0.25")), cplx(0.25, 0.0));
    EXPECT_THROW(parse_complex(json::parse("[1, 2, 3]")), UsageError);
    EXPECT_THROW(parse_complex(json::parse("\"x\"")), UsageError);
    EXPECT_THROW(parse_complex_matrix(json::parse("[[1, 2]]"), "A"), UsageError);
}

TEST(Config, SectionsAndOverrides) {
    JcConfig c;
    c.merge(json::parse(R"({"jc": {"g": 0.0, "alpha": [1, 0.5], "steps": 7}})"));
    EXPECT_EQ(c.g, 0.0);
    EXPECT_EQ(c.alpha, cplx(1.0, 0.5));
    EXPECT_EQ(c.steps, 7);
    EXPECT_THROW(c.merge(json::parse(R"({"steps": "many"})")), UsageError);
}

TEST(Config, DimsParsing) {
    const auto d = VerifyConfig::parse_dims(std::string("2x2,3x4"));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[1].d1, 3);
    EXPECT_EQ(d[1].d2, 4);
    EXPECT_THROW(VerifyConfig::parse_dims(std::string("2by2")), UsageError);
    EXPECT_THROW(VerifyConfig::parse_dims(json::parse("[[2, 2.5]]")), UsageError);
}

// ------------------------------------ jc -------------------------------------

TEST(RunJc, UncoupledPurityColumnIsOne) {
    JcConfig c = small_jc();
    c.g = 0.0;
    std::ostringstream csv, err;
    ASSERT_EQ(run_jc(c, csv, err), ok) << err.str();
    const auto rows = parse_csv(csv.str());
    ASSERT_EQ(rows.size(), 62u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][1]), 1.0, 1e-10);
}

TEST(RunJc, DeterministicOutput) {
    std::ostringstream a, b, err;
    ASSERT_EQ(run_jc(small_jc(), a, err), ok);
    ASSERT_EQ(run_jc(small_jc(), b, err), ok);
    EXPECT_EQ(a.str(), b.str());
}

TEST(RunJc, ResonantRunShapeAndBounds) {
    JcConfig c;  // defaults are the resonant run, shortened here
    c.steps = 120;
    std::ostringstream csv, err;
    ASSERT_EQ(run_jc(c, csv, err), ok) << err.str();
    const auto rows = parse_csv(csv.str());
    ASSERT_EQ(rows.size(), 122u);
    ASSERT_EQ(rows[0], jc_columns());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), jc_columns().size());
        const double p = std::stod(rows[i][1]);
        for (int col : {2, 3, 4, 6}) EXPECT_LE(std::stod(rows[i][col]), p + 1e-9) << "row " << i << " col " << col;
        EXPECT_GE(std::stod(rows[i][5]) + 1e-9, p);
    }
    EXPECT_EQ(rows[1][7], "initial");
}

TEST(RunJc, UsageAndDomainErrors) {
    std::ostringstream csv, err;
    JcConfig c = small_jc();
    c.steps = 0;
    EXPECT_EQ(run_jc(c, csv, err), usage);
    c = small_jc();
    c.spin_j = 0.7;
    EXPECT_EQ(run_jc(c, csv, err), domain_violation);
    c = small_jc();
    c.alpha = {3.0, 0.0};  // 9 > 16 / 4
    EXPECT_EQ(run_jc(c, csv, err), domain_violation);
    EXPECT_NE(err.str().find("truncation"), std::string::npos);
}

// --------------------------------- gaussian ----------------------------------

TEST(RunGaussian, BlockDiagonalWithoutReference) {
    GaussianConfig c;
    c.merge(json::parse(R"({"A": [[[0.2, 1], 0], [0, [0, 2]]]})"));
    std::ostringstream out, err;
    ASSERT_EQ(run_gaussian(c, out, err), ok) << err.str();
    const auto kv = parse_kv(out.str());
    EXPECT_NEAR(std::stod(kv.at("purity")), 1.0, 1e-12);
    EXPECT_NEAR(std::stod(kv.at("cross_correlation_optimal")), 1.0, 1e-12);
    EXPECT_EQ(kv.count("cross_correlation_b"), 0u);
}

TEST(RunGaussian, CoupledExampleMatchesModule) {
    GaussianConfig c;
    c.merge(json::parse(kCoupledExample));
    c.b = ComplexMatrix::Identity(2, 2) * cplx(0.0, 1.0);
    std::ostringstream out, err;
    ASSERT_EQ(run_gaussian(c, out, err), ok) << err.str();
    const auto kv = parse_kv(out.str());
    const GaussianShape a(1, 1, *c.a);
    EXPECT_EQ(kv.at("purity"), format_double(purity_gaussian(a)));
    EXPECT_EQ(kv.at("cross_correlation_optimal"), format_double(cross_correlation_gaussian(a, optimal_reference(a))));
    EXPECT_GT(std::stod(kv.at("slack_b")), 0.0);
    EXPECT_GT(std::stod(kv.at("slack_optimal")), 0.0);
}

TEST(RunGaussian, ContractViolationsExitThree) {
    std::ostringstream out, err;
    GaussianConfig c;
    c.merge(json::parse(kCoupledExample));
    c.b = *c.a;  // off-block entries
    EXPECT_EQ(run_gaussian(c, out, err), domain_violation);
    EXPECT_NE(err.str().find("block-diagonal"), std::string::npos);

    GaussianConfig bad;
    bad.merge(json::parse(R"({"A": [[[0, -1], 0], [0, [0, 1]]]})"));
    std::ostringstream err2;
    EXPECT_EQ(run_gaussian(bad, out, err2), domain_violation);
    EXPECT_NE(err2.str().find("eigenvalue #0"), std::string::npos);
}

TEST(RunGaussian, MissingShapeIsUsage) {
    std::ostringstream out, err;
    EXPECT_EQ(run_gaussian(GaussianConfig{}, out, err), usage);
}

// ---------------------------------- verify -----------------------------------

TEST(RunVerify, SmokeModeIsFastAndPasses) {
    VerifyConfig c;
    c.samples = 1;
    std::ostringstream out, err;
    const auto start = std::chrono::steady_clock::now();
    EXPECT_EQ(run_verify(c, out, err), ok) << out.str();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(seconds, 5.0);
    EXPECT_NE(out.str().find("ALL PASS"), std::string::npos);
}

TEST(RunVerify, CorruptedBoundFailsByName) {
    VerifyConfig c;
    c.samples = 1;
    c.corrupt_property = "theorem_product_overlap_bound";
    std::ostringstream out, err;
    EXPECT_EQ(run_verify(c, out, err), invariant_violation);
    EXPECT_NE(out.str().find("FAIL theorem_product_overlap_bound"), std::string::npos);
    EXPECT_NE(out.str().find("FAILURES PRESENT"), std::string::npos);
}

TEST(RunVerify, OutputIsDeterministic) {
    VerifyConfig c;
    c.samples = 2;
    std::ostringstream a, b, err;
    run_verify(c, a, err);
    run_verify(c, b, err);
    EXPECT_EQ(a.str(), b.str());
}

// ------------------------------- CLI binary ----------------------------------

TEST(Cli, ExitCodes) {
    const auto good = temp_file("good.json", kCoupledExample);
    const auto bad = temp_file("bad.json", R"({"A": [[[0, -1], 0], [0, [0, 1]]]})");
    const auto broken = temp_file("broken.json", "{not json");
    EXPECT_EQ(run_cli("gaussian --config " + good.string()), 0);
    EXPECT_EQ(run_cli("gaussian --config " + bad.string()), 3);
    EXPECT_EQ(run_cli("gaussian --config " + broken.string()), 1);
    EXPECT_EQ(run_cli("gaussian"), 1);
    EXPECT_EQ(run_cli(""), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli("jc --steps 0"), 1);
    EXPECT_EQ(run_cli("jc --spin-j 0.3 --steps 2"), 3);
    EXPECT_EQ(run_cli("verify --samples 1 --corrupt-property sandwich_bounds"), 2);
}

TEST(Cli, JcFlagsOverrideConfigAndWriteCsv) {
    const auto cfg = temp_file("jc.json", R"({"jc": {"g": 0.3, "spin_j": 1, "n_max": 10, "steps": 500}})");
    const auto out = std::filesystem::temp_directory_path() / "purity_app_jc.csv";
    ASSERT_EQ(run_cli("jc --config " + cfg.string() + " --steps 5 --alpha 1 0 --g 0 --output " + out.string()), 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = parse_csv(ss.str());
    ASSERT_EQ(rows.size(), 7u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][1]), 1.0, 1e-10);
}
