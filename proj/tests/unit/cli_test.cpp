#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "qsusy/io.hpp"

using namespace qsusy;
using qsusy::cli::run;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST(Cli, OracleVev) {
  const Result r = call({"oracle", "--q", "1/2", "--word", "a1 a1 A1 A1", "--vev"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("vev"), "9/2");
}

TEST(Cli, OracleNeedsRational) {
  EXPECT_EQ(call({"oracle", "--q", "0.5", "--word", "a1"}).code, cli::kUsage);
}

TEST(Cli, SingularPrefactorExitsWithHint) {
  const Result r = call({"spectrum", "--q", "-1", "--eps", "1"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("swap_picture"), std::string::npos);
}

TEST(Cli, SpectrumJson) {
  const Result r = call({"spectrum", "--q", "1/2", "--nmax", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("precision"), "exact");
  EXPECT_TRUE(j.contains("H"));
  EXPECT_TRUE(j.contains("Ht"));
  EXPECT_EQ(json::parse(call({"spectrum", "--q", "0.5", "--nmax", "12"}).out).at("precision"), "float");
}

TEST(Cli, SpectrumCsv) {
  const Result r = call({"spectrum", "--q", "1", "--nmax", "8", "--output", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,nu,energy,pair_id");
}

TEST(Cli, VerifyPasses) {
  const Result r = call({"verify", "--q", "1/2", "--positivity-samples", "50"});
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("checks").at("oracle_equivalence").at("status"), "pass");
  const json f = json::parse(call({"verify", "--q", "0.5", "--positivity-samples", "50"}).out);
  EXPECT_EQ(f.at("checks").at("degeneracy").at("status"), "skipped");
}

TEST(Cli, ScanSkipsSingularAndRejectsZero) {
  const Result r = call({"scan", "--q-grid", "-1.5:-0.5:3", "--nmax", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("skipped: singular"), std::string::npos);  // q = -1 lies on the grid
  EXPECT_EQ(call({"scan", "--q-grid", "-1:1:3"}).code, cli::kUsage);
  EXPECT_EQ(call({"scan", "--q-grid", "1:2"}).code, cli::kUsage);
}

TEST(Cli, ConfigFileWithOverride) {
  const std::string path = ::testing::TempDir() + "qsusy_cfg.json";
  std::ofstream(path) << R"({"params": {"q": "2/3", "eps": -1}, "n_max": 10})";
  const Result r = call({"spectrum", "--config", path, "--eps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("params").at("q"), "2/3");
  EXPECT_EQ(j.at("params").at("eps"), 1);
  EXPECT_EQ(j.at("n_max"), 10);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, cli::kUsage);
  EXPECT_EQ(call({"spectrum"}).code, cli::kUsage);
  EXPECT_EQ(call({"spectrum", "--q", "x"}).code, cli::kUsage);
  EXPECT_EQ(call({"--help"}).code, cli::kPass);
}
