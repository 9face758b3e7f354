#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"
#include "vecopt/checks.hpp"
#include "vecopt/problems.hpp"

namespace vecopt {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vecopt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "vecopt");
    args.push_back("--out-dir");
    args.push_back(dir_.string());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(Cli, SolveWritesTrace) {
  const CliResult r = run({"solve", "EX1", "--method", "TT-PRP", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "converged");
  EXPECT_TRUE(fs::exists(dir_ / "trace_EX1_TT-PRP_seed7.csv"));
}

TEST_F(Cli, SolveUnknownProblem) {
  const CliResult r = run({"solve", "UNKNOWN"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("EX1"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("Hil1"), std::string::npos) << r.err;
}

TEST_F(Cli, SolveIterationCap) {
  const CliResult r = run({"solve", "EX1", "--x0", "1.5,0.9", "--max-iters", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["status"], "iteration_cap");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "EX1", "--method", "CG"}).code, 2);
  EXPECT_EQ(run({"solve", "EX1", "--x0", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"bench", "--config", (dir_ / "missing.json").string()}).code, 2);
}

TEST_F(Cli, BenchWritesOutputs) {
  const CliResult r = run({"bench", "--problem", "MOP5", "--method", "TT-PRP", "--method",
                           "SD", "--starts", "3", "--check-invariants"});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* f : {"manifest.json", "runs.csv", "metrics.csv", "timing.csv",
                        "profile_iterations.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
}

TEST_F(Cli, ConfigFileIsOverriddenByFlags) {
  fs::create_directories(dir_);
  const fs::path config = dir_ / "config.json";
  {
    std::ofstream out(config);
    out << R"({"problems": ["EX1"], "methods": ["SD"], "starts": 2, "solver": {"max_iters": 0}})";
  }
  const CliResult capped = run({"solve", "--config", config.string(), "--x0", "1.5,0.9"});
  EXPECT_EQ(capped.code, 1) << capped.err;
  EXPECT_EQ(json::parse(capped.out)["method"], "SD");
  const CliResult freed =
      run({"solve", "--config", config.string(), "--x0", "1.5,0.9", "--max-iters", "3000"});
  EXPECT_EQ(freed.code, 0) << freed.err;
}

TEST_F(Cli, CheckFilter) {
  const CliResult r = run({"check", "--filter", "qp"});
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  ASSERT_FALSE(j.empty());
  for (const auto& item : j) {
    EXPECT_EQ(item["check"].get<std::string>().rfind("qp", 0), 0u) << item["check"];
  }
}

TEST_F(Cli, CheckWithEmptyFilterMatchIsAnError) {
  EXPECT_EQ(run({"check", "--filter", "nothing-matches"}).code, 2);
}

TEST(Checks, CorruptedJacobianIsNamed) {
  Problem fds = get_problem("FDS-1");
  const auto good = fds.eval_jacobian;
  fds.eval_jacobian = [good](const Vector& x) {
    Matrix J = good(x);
    J(1, 0) *= 1.001;
    return J;
  };
  CheckOptions options;
  options.filter = "jacobian";
  const auto results = run_checks({fds}, options);
  ASSERT_FALSE(results.empty());
  bool named = false;
  for (const auto& r : results) {
    if (!r.passed && r.name.find("FDS-1") != std::string::npos) named = true;
  }
  EXPECT_TRUE(named);
  options.filter = "";
  const auto pristine = run_checks({get_problem("FDS-1")}, options);
  for (const auto& r : pristine) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

}  // namespace
}  // namespace vecopt
