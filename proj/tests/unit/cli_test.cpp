#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "splitlab/fixtures.hpp"
#include "splitlab/io.hpp"
#include "splitlab/splittings.hpp"

using namespace splitlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "splitlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("splitlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static json read_json(const std::string& p) { return json::parse(io::read_text(p)); }

    fs::path dir_;
};

TEST_F(Cli, HelpAndVersion) {
    EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
    const Outcome v = invoke({"--version"});
    EXPECT_EQ(v.code, cli::kOk);
    EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, cli::kUsage);
    EXPECT_EQ(invoke({"transmogrify"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"compare", "--example", "ex-3-13"}).code, cli::kUsage);  // --theorem is required
    EXPECT_EQ(invoke({"compare", "--theorem", "NOPE", "--example", "ex-3-13"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"reproduce", "ex-9-9"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"analyze", "--example", "ex-3-2", "--lambda", "-1", "--matrix", path("none.txt")}).code,
              cli::kUsage);
    EXPECT_EQ(invoke({"gen", "fredholm-gauss"}).code, cli::kUsage);  // writing files needs --out
}

TEST_F(Cli, IoErrors) {
    EXPECT_EQ(invoke({"analyze", "--bundle", path("missing.txt")}).code, cli::kIo);
    io::write_text(path("bad.txt"), "2 2\n1 2\n3 x\n");
    const Outcome bad = invoke({"analyze", "--matrix", path("bad.txt"), "--lambda", "0.1", "--strategy", "jacobi"});
    EXPECT_EQ(bad.code, cli::kIo);
    EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
}

TEST_F(Cli, AnalyzeReferenceSingle) {
    const Outcome r = invoke({"analyze", "--example", "ex-3-2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const json j = json::parse(r.out);
    const json& original = j.at("splittings").at(0);
    EXPECT_TRUE(original.at("flags").at("weak1").get<bool>());
    EXPECT_FALSE(original.at("flags").at("proper").get<bool>());
    EXPECT_NEAR(original.at("iteration").at("radius").get<double>(), 0.9823, 5e-4);
}

TEST_F(Cli, SolveScalingSplittingHasRateOneHalf) {
    const Matrix A{{1.0, 1.0}, {1.0, 1.0}};
    const SingleSplitting s = generate_proper_splitting(A, 2.0);
    io::save_bundle(path("single.txt"), {s.A(), s.U(), s.V()});
    io::save_vector(path("b.txt"), Vector{1.0, 1.0});
    const Outcome r = invoke({"solve", "--bundle", path("single.txt"), "--rhs", path("b.txt"), "--out", path("run")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const json report = read_json(path("run/solve.json"));
    EXPECT_TRUE(report.at("report").at("converged").get<bool>());
    EXPECT_NEAR(report.at("report").at("rate_estimate").get<double>(), 0.5, 0.05);
    EXPECT_NEAR(report.at("rho_iteration").get<double>(), 0.5, 1e-10);

    const json manifest = read_json(path("run/manifest.json"));
    EXPECT_EQ(manifest.at("schema"), "splitlab.manifest/1");
    EXPECT_EQ(manifest.at("command"), "solve");
    EXPECT_EQ(manifest.at("tool_version"), "0.1.0");
    EXPECT_EQ(manifest.at("inputs").size(), 2u);
    EXPECT_DOUBLE_EQ(manifest.at("config").at("stop_eps").get<double>(), 1e-10);
    for (const auto& o : manifest.at("outputs")) EXPECT_TRUE(fs::exists(o.get<std::string>())) << o;
}

TEST_F(Cli, SolveBudgetExhaustionIsNonConvergence) {
    const Matrix A{{1.0, 1.0}, {1.0, 1.0}};
    const SingleSplitting s = generate_proper_splitting(A, 20.0);
    io::save_bundle(path("single.txt"), {s.A(), s.U(), s.V()});
    EXPECT_EQ(invoke({"solve", "--bundle", path("single.txt"), "--max-iter", "5"}).code, cli::kNonConvergence);
}

TEST_F(Cli, GeneratedFixtureComparesAsReference) {
    ASSERT_EQ(invoke({"gen", "fixture", "--example", "ex-3-13", "--out", path("fx")}).code, cli::kOk);
    const auto d1 = io::load_bundle(path("fx/double1.txt"));
    const auto& ex = fixtures::type_two_pair();
    ASSERT_EQ(d1.size(), 4u);
    EXPECT_EQ(d1[0].entries(), ex.A.entries());
    EXPECT_EQ(d1[1].entries(), ex.P1.entries());

    const Outcome r = invoke({"compare", "--theorem", "DW2_SCALED", "--bundle", path("fx/double1.txt"), "--bundle2",
                              path("fx/double2.txt")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const json v = json::parse(r.out).at("verdict");
    EXPECT_TRUE(v.at("conclusion_holds").get<bool>());
    EXPECT_TRUE(v.at("hypotheses_hold").get<bool>());
    EXPECT_NEAR(v.at("rho_left").get<double>(), 0.6667, 5e-4);
    EXPECT_NEAR(v.at("rho_right").get<double>(), 0.7729, 5e-4);
    EXPECT_NEAR(v.at("evidence").at("P2Ainv").at(0).at(0).get<double>(), 2.1818, 1e-3);
}

TEST_F(Cli, ReproduceIsDeterministic) {
    const Outcome a = invoke({"reproduce", "ex-3-13"}), b = invoke({"reproduce", "ex-3-13"});
    EXPECT_EQ(a.code, cli::kOk);
    EXPECT_EQ(a.out, b.out);
    const Outcome j = invoke({"reproduce", "ex-3-13", "--format", "json"});
    EXPECT_EQ(j.code, cli::kOk);
    EXPECT_FALSE(json::parse(j.out).empty());
}

TEST_F(Cli, FuzzCounterexampleIsFailure) {
    const Outcome r = invoke({"fuzz", "--theorem", "CMP_MIX_B", "--instances", "200"});
    EXPECT_EQ(r.code, cli::kFailure) << r.err;
    EXPECT_EQ(invoke({"fuzz", "--theorem", "CMP_FIRST", "--instances", "50"}).code, cli::kOk);
}

TEST_F(Cli, GeneratedPoissonProblem) {
    ASSERT_EQ(invoke({"gen", "poisson-neumann", "--n", "3", "--out", path("p")}).code, cli::kOk);
    bool found = false;
    for (const auto& e : fs::directory_iterator(path("p")))
        if (e.path().extension() == ".txt") {
            const Matrix m = io::load_matrix(e.path());
            if (m.rows() == 16 && m.cols() == 16) found = true;
        }
    EXPECT_TRUE(found);
}

}  // namespace
