// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "drsub/experiment.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace drsub {
namespace {

namespace fs = std::filesystem;

constexpr char kTwoSets[] =
    R"({"kind":"coverage","sets":[[0,1],[1,2]],"weights":[1,1,1]})";
constexpr char kDeskCoverage[] =
    R"({"kind":"coverage","sets":[[0,1,2],[2,3],[3,4,0]],"weights":[1,2,1.5,1,0.5]})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("drsub_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  ExperimentConfig Config(const std::string& instance, const std::string& body,
                          const std::string& family, std::vector<int> iters) {
    ExperimentConfig c;
    c.instance = instance;
    c.constraint = body;
    c.family = family;
    c.iters = std::move(iters);
    c.out = dir_.string();
    return c;
  }

  Json ReadJson(const std::string& name) {
    std::ifstream in(dir_ / name);
    return Json::parse(in);
  }

  std::string Read(const std::string& name) {
    std::ifstream in(dir_ / name, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, RunMonotoneCoverage) {
  ExperimentConfig c = Config(kTwoSets, R"({"kind":"cardinality","n":2,"k":1})",
                              "monotone", {500});
  c.opt = "sets";
  ASSERT_EQ(CmdRun(c, out_, err_), kExitOk) << err_.str();
  const Json s = ReadJson("summary_N500.json");
  EXPECT_EQ(s["opt"].get<double>(), 2.0);
  EXPECT_GE(s["ratio_achieved"].get<double>(), 1.0 - std::exp(-1.0) - 0.01);
  EXPECT_NEAR(s["ratio_guaranteed"].get<double>(), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_TRUE(s["feasible"].get<bool>());
  EXPECT_GE(s["min_potential_increment_margin"].get<double>(), -1e-9);
  EXPECT_TRUE(s["min_gronwall_margin"].is_null());
  EXPECT_EQ(s["certificate"]["method"], "set-bruteforce");
  for (const char* key : {"final_value", "opt", "ratio_achieved", "ratio_guaranteed",
                          "additive_gap", "min_potential_increment_margin",
                          "min_gronwall_margin", "feasible"}) {
    EXPECT_TRUE(s.contains(key)) << key;
  }

  const std::string csv = Read("trajectory_N500.csv");
  EXPECT_EQ(csv.rfind(std::string(kTrajectoryHeader), 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 502);
  EXPECT_FALSE(fs::exists(dir_ / "trajectory_N500.csv.tmp"));
}

TEST_F(CliTest, RunGeneralWithGrid) {
  ExperimentConfig c = Config(R"({"kind":"quadratic","H":[[-2,0],[0,-2]],"c":[1,0.5]})",
                              R"({"kind":"box","n":2})", "general", {200});
  c.opt = "grid";
  ASSERT_EQ(CmdRun(c, out_, err_), kExitOk) << err_.str();
  const Json s = ReadJson("summary_N200.json");
  EXPECT_NEAR(s["opt"].get<double>(), 0.8125, 1e-12);
  EXPECT_EQ(s["ratio_guaranteed"].get<double>(), 0.25);
  EXPECT_GE(s["min_gronwall_margin"].get<double>(), -1e-9);
  EXPECT_EQ(s["certificate"]["method"], "grid");
}

TEST_F(CliTest, RatioGuaranteedIndependentOfInstance) {
  ExperimentConfig c = Config(kDeskCoverage, R"({"kind":"cardinality","n":3,"k":2})",
                              "measured", {10});
  ASSERT_EQ(CmdRun(c, out_, err_), kExitOk);
  EXPECT_NEAR(ReadJson("summary_N10.json")["ratio_guaranteed"].get<double>(),
              std::exp(-1.0), 1e-15);
  EXPECT_TRUE(ReadJson("summary_N10.json")["opt"].is_null());
}

TEST_F(CliTest, ZeroIterationsIsInputError) {
  EXPECT_THROW(ParseIters("0"), InputError);
  try {
    ParseIters("0");
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "N must be ≥ 1");
  }
  ExperimentConfig c = Config(kTwoSets, R"({"kind":"box","n":2})", "monotone", {});
  EXPECT_EQ(CmdRun(c, out_, err_), kExitInput);
  EXPECT_NE(err_.str().find("N must be ≥ 1"), std::string::npos);
}

TEST_F(CliTest, MeasuredOnSignedPackingIsConfigError) {
  ExperimentConfig c = Config(
      R"({"kind":"quadratic","H":[[0,-1],[-1,0]],"c":[1,1]})",
      R"({"kind":"packing","n":2,"A":[[1,-1],[1,1]],"b":[0,1.5]})", "measured", {10});
  EXPECT_EQ(CmdRun(c, out_, err_), kExitInput);
  EXPECT_NE(err_.str().find("down-closed"), std::string::npos);
}

TEST_F(CliTest, MalformedInputsAreInputErrors) {
  for (const auto& [instance, body] : std::vector<std::pair<std::string, std::string>>{
           {"{not json", R"({"kind":"box","n":2})"},
           {kTwoSets, R"({"kind":"box","n":3})"},
           {R"({"kind":"mystery"})", R"({"kind":"box","n":2})"},
           {kTwoSets, "/nonexistent/body.json"},
       }) {
    ExperimentConfig c = Config(instance, body, "monotone", {5});
    EXPECT_EQ(CmdRun(c, out_, err_), kExitInput) << instance << " / " << body;
  }
  ExperimentConfig c = Config(kTwoSets, R"({"kind":"box","n":2})", "monotone", {5});
  c.opt = "sets";
  c.constraint = R"({"kind":"packing","n":2,"A":[1,1],"b":[1]})";
  EXPECT_EQ(CmdRun(c, out_, err_), kExitInput);
}

TEST_F(CliTest, CustomScheduleValidation) {
  ExperimentConfig c = Config(kTwoSets, R"({"kind":"box","n":2})", "monotone", {5});
  c.schedule = R"({"a":{"kind":"exp","scale":2},"b":{"kind":"exp","scale":2},"T":1})";
  EXPECT_EQ(CmdRun(c, out_, err_), kExitInput);
  EXPECT_NE(err_.str().find("ln a_0 = 0"), std::string::npos);

  c.family = "general";
  c.schedule = R"({"a":{"kind":"poly","coeffs":[1,2,1]},"b":{"kind":"poly","coeffs":[0,1]},"T":1})";
  EXPECT_EQ(CmdRun(c, out_, err_), kExitOk);
}

TEST_F(CliTest, SweepMonotoneSlope) {
  ExperimentConfig c = Config(kDeskCoverage, R"({"kind":"cardinality","n":3,"k":2})",
                              "monotone", {16, 32, 64, 128, 256});
  c.opt = "sets";
  ASSERT_EQ(CmdSweep(c, out_, err_), kExitOk) << err_.str();
  const Json s = ReadJson("sweep_monotone.json");
  EXPECT_NEAR(s["additive_slope"].get<double>(), -1.0, 0.15);
  const std::string csv = Read("sweep_monotone.csv");
  EXPECT_EQ(csv.rfind("N,achieved,guaranteed,additive\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  for (int n : {16, 32, 64, 128, 256}) {
    EXPECT_TRUE(fs::exists(dir_ / ("trajectory_N" + std::to_string(n) + ".csv")));
  }
}

TEST_F(CliTest, SweepGeneralCoefficientConstant) {
  ExperimentConfig c = Config(R"({"kind":"quadratic","H":[[-2,0],[0,-2]],"c":[1,0.5]})",
                              R"({"kind":"box","n":2})", "general", {8, 40, 200});
  ASSERT_EQ(CmdSweep(c, out_, err_), kExitOk) << err_.str();
  std::istringstream rows(Read("sweep_general.csv"));
  std::string line;
  std::getline(rows, line);
  int count = 0;
  while (std::getline(rows, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 4u);
    EXPECT_EQ(std::stod(cells[2]), 0.25);
    ++count;
  }
  EXPECT_EQ(count, 3);
}

TEST_F(CliTest, SweepValidation) {
  ExperimentConfig c = Config(kTwoSets, R"({"kind":"box","n":2})", "monotone", {10});
  EXPECT_EQ(CmdSweep(c, out_, err_), kExitInput);
  c.iters = {10, 20, 20};
  EXPECT_EQ(CmdSweep(c, out_, err_), kExitInput);
  c.iters = {30, 20, 10};
  EXPECT_EQ(CmdSweep(c, out_, err_), kExitInput);
}

TEST_F(CliTest, DeterministicCsv) {
  ExperimentConfig c = Config(
      R"({"kind":"coverage","random":{"sets":5,"universe":10,"density":0.4}})",
      R"({"kind":"cardinality","n":5,"k":2})", "general-linear", {120});
  c.seed = 42;
  c.opt = "sets";
  ASSERT_EQ(CmdRun(c, out_, err_), kExitOk) << err_.str();
  const std::string first = Read("trajectory_N120.csv");
  ASSERT_EQ(CmdRun(c, out_, err_), kExitOk);
  EXPECT_EQ(first, Read("trajectory_N120.csv"));
  c.seed = 43;
  ASSERT_EQ(CmdRun(c, out_, err_), kExitOk);
  EXPECT_NE(first, Read("trajectory_N120.csv"));
}

TEST(ConfigTest, JsonOverridesFlags) {
  ExperimentConfig base;
  base.family = "monotone";
  base.iters = {5};
  const ExperimentConfig c = ApplyConfigJson(
      base, Json::parse(R"({"family":"measured","iters":[16,32,64],"seed":3,"tol":1e-6,
                            "instance":{"kind":"coverage","sets":[[0]]}})"));
  EXPECT_EQ(c.family, "measured");
  EXPECT_EQ(c.iters, (std::vector<int>{16, 32, 64}));
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.tolerance, 1e-6);
  EXPECT_EQ(Json::parse(c.instance)["kind"], "coverage");
  EXPECT_THROW(ApplyConfigJson(base, Json::parse("[1]")), InputError);
  EXPECT_THROW(ApplyConfigJson(base, Json::parse(R"({"iters":"4,x"})")), InputError);
}

TEST(ParseItersTest, Lists) {
  EXPECT_EQ(ParseIters("500"), std::vector<int>{500});
  EXPECT_EQ(ParseIters("16,32,64"), (std::vector<int>{16, 32, 64}));
  EXPECT_THROW(ParseIters("16,,32"), InputError);
  EXPECT_THROW(ParseIters("abc"), InputError);
  EXPECT_THROW(ParseIters("-3"), InputError);
}

TEST(SlopeTest, ExactPowerLaw) {
  EXPECT_NEAR(LogLogSlope({1.0, 2.0, 4.0}, {8.0, 4.0, 2.0}), -1.0, 1e-15);
}

TEST(CheckTest, PristineAndCorrupted) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdCheck(CheckOptions{}, out, err), kExitOk);
  const std::string text = out.str();
  EXPECT_GE(std::count(text.begin(), text.end(), '\n'), 10);
  EXPECT_NE(text.find("0.632121"), std::string::npos);
  EXPECT_NE(text.find("0.367879"), std::string::npos);
  EXPECT_NE(text.find("0.250000"), std::string::npos);
  EXPECT_EQ(text.find("[FAIL]"), std::string::npos);

  std::ostringstream bad_out;
  CheckOptions corrupt;
  corrupt.corrupt_preset = true;
  EXPECT_EQ(CmdCheck(corrupt, bad_out, err), kExitInvariant);
  EXPECT_NE(bad_out.str().find("ln a_T = 1"), std::string::npos);
}

}  // namespace
}  // namespace drsub
