#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(SO3TOS_CLI_PATH) + " " + args + " 2>&1";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("so3tos_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out() const { return "--out " + dir_.string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpExitsZero) {
  const Outcome r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("synth"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
  EXPECT_EQ(run("synth --grid 3").code, 1);
  EXPECT_EQ(run("synth --format pdf").code, 1);
}

TEST_F(Cli, AlphaOutOfRangeNamesTheBound) {
  const Outcome r = run("synth --alpha 1.0 " + out());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("pi/4"), std::string::npos) << r.out;
}

TEST_F(Cli, SynthWritesChartAndAnnotatesCount) {
  const Outcome r = run("synth --alpha 0.2617993877991494 --grid 128 " + out());
  ASSERT_EQ(r.code, 0) << r.out;
  const fs::path json = dir_ / "chart_0.261799.json", svg = dir_ / "chart_0.261799.svg";
  ASSERT_TRUE(fs::exists(json));
  ASSERT_TRUE(fs::exists(svg));
  const auto j = nlohmann::json::parse(slurp(json));
  EXPECT_EQ(j.at("schema"), "so3tos-chart/1");
  EXPECT_EQ(j.at("equator_count"), 3);
  const std::string s = slurp(svg);
  EXPECT_NE(s.find("3 meridian crossings"), std::string::npos);
  EXPECT_NE(s.find("so3tos-chart/1"), std::string::npos);
}

TEST_F(Cli, SynthIsDeterministic) {
  ASSERT_EQ(run("synth --alpha 0.3 --grid 64 --format json,csv " + out()).code, 0);
  const std::string a = slurp(dir_ / "chart_0.3.json"), c = slurp(dir_ / "chart_0.3_curves.csv");
  ASSERT_EQ(run("synth --alpha 0.3 --grid 64 --format json,csv " + out()).code, 0);
  EXPECT_EQ(a, slurp(dir_ / "chart_0.3.json"));
  EXPECT_EQ(c, slurp(dir_ / "chart_0.3_curves.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "chart_0.3.svg"));
}

TEST_F(Cli, FrontNeedsTime) {
  EXPECT_EQ(run("front --alpha 0.3 " + out()).code, 1);
  const Outcome r = run("front --alpha 0.3 --time 2 --grid 64 " + out());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = slurp(dir_ / "front_0.3_T2.csv");
  EXPECT_EQ(csv.rfind("T,y1,y2,y3,sign,s,m,t\n", 0), 0u);
}

TEST_F(Cli, VerifyPasses) {
  const Outcome r = run("verify --alpha 0.3 --cells 500 --format json " + out());
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(slurp(dir_ / "verify_0.3.json"));
  for (const auto& inv : j.at("invariants")) EXPECT_TRUE(inv.at("pass").get<bool>()) << inv.at("id");
}

TEST_F(Cli, VerifyFailureExitsTwo) {
  // A horizon too short to reach the south pole leaves coverage holes.
  const Outcome r = run("verify --alpha 0.3 --cells 500 --horizon 1 " + out());
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("wavefront.coverage"), std::string::npos);
}

TEST_F(Cli, ConfigFileWithOverride) {
  fs::create_directories(dir_);
  const fs::path cfg = dir_ / "run.ini";
  std::ofstream(cfg) << "alpha-min=0.3\nalpha-max=0.32\nstep=0.01\n";
  const Outcome r = run("sweep --config " + cfg.string() + " --alpha-max 0.31 " + out());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = slurp(dir_ / "sweep_0.3_0.31.csv");
  EXPECT_EQ(csv.rfind("alpha,n0,n_s,n_a,r,rho,label\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
