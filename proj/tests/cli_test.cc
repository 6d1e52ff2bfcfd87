// Copyright 2026 The eosssd Authors.
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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "eosssd/instance.h"

namespace eosssd::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int CountLines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("eosssd_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Generate(int facilities, int customers, int seed,
                       const std::string& family = "sqrt") {
    const std::string path =
        (dir_ / ("g" + std::to_string(seed) + ".inst")).string();
    const Outcome o = RunCli({"generate", "--seed", std::to_string(seed), "--family",
                              family, "--facilities", std::to_string(facilities),
                              "--customers", std::to_string(customers), "-o", path});
    EXPECT_EQ(o.code, kExitConverged) << o.err;
    return path;
  }

  fs::path dir_;
};

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(RunCli({"--help"}).code, 0);
  EXPECT_EQ(RunCli({"solve", "--help"}).code, 0);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"solve", (dir_ / "missing.inst").string()}).code, kExitUsage);
  const std::string path = Generate(3, 6, 1);
  EXPECT_EQ(RunCli({"solve", path, "--alpha0", "3"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"solve", path, "--norm", "l7"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"generate", "--family", "cubic", "--facilities", "2",
                    "--customers", "2"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, BadInstanceReportsLine) {
  const fs::path path = dir_ / "bad.inst";
  std::ofstream(path) << "not an instance\n";
  const Outcome o = RunCli({"solve", path.string()});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, IterationLimitExitsTwo) {
  const std::string path = Generate(10, 40, 3);
  const Outcome o = RunCli({"solve", path, "--max-iters", "1"});
  EXPECT_EQ(o.code, kExitIterationLimit);
  EXPECT_EQ(CountLines(o.out), 2);
}

TEST_F(CliTest, SolveConvergesOnTinyInstance) {
  const std::string path = Generate(1, 1, 4);
  const Outcome o = RunCli({"solve", path, "--no-header"});
  EXPECT_EQ(o.code, kExitConverged) << o.out;
  EXPECT_EQ(CountLines(o.out), 1);
}

TEST_F(CliTest, JsonOutput) {
  const std::string path = Generate(3, 6, 5);
  const Outcome o = RunCli({"solve", path, "--json", "--max-iters", "50"});
  EXPECT_NE(o.out.find("\"stop_reason\""), std::string::npos);
}

TEST_F(CliTest, ReportAppendsWithOneHeader) {
  const std::string path = Generate(3, 6, 6);
  const std::string report = (dir_ / "report.csv").string();
  for (int k = 0; k < 3; ++k) {
    RunCli({"solve", path, "--report", report, "--max-iters", "50"});
  }
  EXPECT_EQ(CountLines(Slurp(report)), 4);
}

TEST_F(CliTest, TraceAndReportReproducible) {
  const std::string path = Generate(8, 30, 7, "fractional");
  std::vector<std::string> contents;
  for (int run = 0; run < 2; ++run) {
    const std::string trace = (dir_ / ("t" + std::to_string(run))).string();
    const std::string report = (dir_ / ("r" + std::to_string(run))).string();
    RunCli({"solve", path, "--trace", trace, "--report", report, "--timing", "off",
            "--parallel", "3", "--max-iters", "300"});
    contents.push_back(Slurp(trace) + Slurp(report));
  }
  EXPECT_FALSE(contents[0].empty());
  EXPECT_EQ(contents[0], contents[1]);
}

TEST_F(CliTest, FamilyOverrideChangesOperatingCost) {
  const std::string path = Generate(2, 4, 8, "linear");
  const Outcome o = RunCli({"solve", path, "--family", "fractional", "--json",
                            "--max-iters", "20"});
  EXPECT_NE(o.out.find("\"instance\""), std::string::npos);
}

TEST_F(CliTest, SuiteGenerationIsStable) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  const Outcome first =
      RunCli({"generate", "--suite", "paper", "--seed", "7", "--output-dir", a.string()});
  RunCli({"generate", "--suite", "paper", "--seed", "7", "--output-dir", b.string()});
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(CountLines(first.out), 27);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(Slurp(entry.path()), Slurp(b / entry.path().filename()));
  }
  EXPECT_EQ(files, 27);
  const Instance p1 = ReadInstance(a / "P1.inst");
  EXPECT_EQ(p1.num_facilities(), 10);
  EXPECT_EQ(p1.num_customers(), 50);
}

TEST_F(CliTest, GeneratorRanges) {
  const std::string path = (dir_ / "r.inst").string();
  RunCli({"generate", "--facilities", "3", "--customers", "40", "--demand-range", "2",
          "3", "-o", path});
  const Instance inst = ReadInstance(path);
  for (const Customer& c : inst.customers()) {
    EXPECT_GE(c.demand_rate, 2.0);
    EXPECT_LE(c.demand_rate, 3.0);
  }
}

TEST_F(CliTest, CompareRowsPerFamily) {
  const std::string p = Generate(3, 6, 9);
  const std::string q = Generate(3, 6, 10);
  const Outcome o = RunCli({"compare", p, q, "--max-iters", "100"});
  EXPECT_EQ(CountLines(o.out), 1 + 3 * 2);
  EXPECT_NE(o.out.find(",linear,"), std::string::npos);
  EXPECT_NE(o.out.find(",sqrt,"), std::string::npos);
  EXPECT_NE(o.out.find(",fractional,"), std::string::npos);
}

TEST_F(CliTest, OracleMatchesOnTinyInstance) {
  const std::string path = Generate(2, 4, 11);
  const Outcome o = RunCli({"oracle", path});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.rfind("model,exact\nvalue,", 0), 0u);
  EXPECT_EQ(RunCli({"oracle", Generate(6, 20, 12)}).code, kExitUsage);
}

TEST_F(CliTest, LinearizeDump) {
  const Outcome o = RunCli({"linearize-dump", "--family", "sqrt", "--epsilon", "0.01",
                            "--upper", "100"});
  EXPECT_EQ(o.code, 0);
  std::istringstream in(o.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "k,tangent_point,left_breakpoint,right_breakpoint,slope,intercept");
  EXPECT_EQ(first.rfind("1,1.3265844269509", 0), 0u) << first;
}

}  // namespace
}  // namespace eosssd::cli
