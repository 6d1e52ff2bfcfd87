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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "eosssd/evaluator.h"
#include "eosssd/instance.h"
#include "eosssd/lagrangian.h"
#include "eosssd/linearization.h"
#include "eosssd/oracle.h"
#include "eosssd/report.h"

namespace eosssd::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, CostFamily> kFamilies = {
    {"linear", CostFamily::kLinear},
    {"sqrt", CostFamily::kSquareRoot},
    {"square_root", CostFamily::kSquareRoot},
    {"fractional", CostFamily::kFractional},
};

const std::map<std::string, StepNorm> kNorms = {
    {"paper", StepNorm::kPaper},
    {"squared", StepNorm::kSquared},
};

struct SolverFlags {
  SolverConfig config;
  std::string trace_path;
  std::string report_path;
  bool json = false;
  bool no_header = false;
  std::string timing = "wall";
  std::optional<CostFamily> family;
};

void AddSolverFlags(CLI::App* cmd, SolverFlags& flags) {
  SolverConfig& c = flags.config;
  cmd->add_option("--epsilon", c.epsilon, "Linearization relative error")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance,-e", c.tolerance, "Stopping gap e")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", c.max_iterations, "Iteration limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alpha0", c.initial_alpha, "Initial step control in (0, 2)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 2.0));
  cmd->add_option("--stall-window", c.stall_window,
                  "Non-improving iterations before alpha is halved")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--stall-threshold", c.stall_threshold,
                  "Relative lower-bound gain counted as improvement")
      ->capture_default_str();
  cmd->add_option("--norm", c.norm, "Step divisor: ||v|| or ||v||^2")
      ->transform(CLI::CheckedTransformer(kNorms, CLI::ignore_case));
  cmd->add_flag("!--no-local-search", c.local_search,
                "Use the plain repair heuristic for upper bounds");
  cmd->add_option("--parallel", c.threads, "Threads for the facility loop")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

std::optional<std::pair<double, double>> RangeOf(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::make_pair(v[0], v[1]);
}

int ExitCodeFor(const SolveReport& report) {
  return report.converged() ? kExitConverged : kExitIterationLimit;
}

bool FileIsEmpty(const std::string& path) {
  std::error_code ec;
  return !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
}

int RunGenerate(std::uint64_t seed, const std::string& family_name,
                const std::optional<std::string>& suite, int facilities,
                int customers, const std::string& output,
                const std::string& output_dir, const GeneratorOptions& options,
                std::ostream& out) {
  const CostFamily family = kFamilies.at(family_name);
  if (suite) {
    if (*suite != "paper") throw CLI::ValidationError("--suite", "only 'paper' is known");
    fs::create_directories(output_dir);
    for (const Instance& inst : GenerateSuite(seed, family, options)) {
      const fs::path path = fs::path(output_dir) / (inst.name() + ".inst");
      WriteInstance(inst, path);
      out << path.string() << '\n';
    }
    return kExitConverged;
  }
  if (facilities < 1 || customers < 1) {
    throw CLI::ValidationError("generate",
                               "--facilities and --customers are required without --suite");
  }
  const Instance inst =
      GenerateInstance(facilities, customers, seed, family, options);
  fs::path path = output.empty() ? fs::path(output_dir) / (inst.name() + ".inst")
                                 : fs::path(output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  WriteInstance(inst, path);
  out << path.string() << '\n';
  return kExitConverged;
}

int RunSolve(const std::string& instance_path, const SolverFlags& flags,
             std::ostream& out) {
  Instance inst = ReadInstance(instance_path);
  if (flags.family) inst = inst.WithFamily(*flags.family);
  const SolveReport report = Solve(inst, flags.config);
  ReportRow row = MakeReportRow(inst, report);
  if (flags.timing == "off") row.cpu_ms = 0.0;

  if (!flags.trace_path.empty()) {
    std::ofstream trace(flags.trace_path, std::ios::binary | std::ios::trunc);
    if (!trace) throw std::runtime_error("cannot write trace file " + flags.trace_path);
    WriteTrace(report, trace);
  }
  if (!flags.report_path.empty()) {
    const bool fresh = FileIsEmpty(flags.report_path);
    std::ofstream file(flags.report_path, std::ios::binary | std::ios::app);
    if (!file) throw std::runtime_error("cannot write report file " + flags.report_path);
    if (fresh) file << CsvHeader() << '\n';
    file << FormatCsvRow(row) << '\n';
  }
  if (flags.json) {
    out << FormatJson(row, report) << '\n';
  } else {
    if (!flags.no_header) out << CsvHeader() << '\n';
    out << FormatCsvRow(row) << '\n';
  }
  return ExitCodeFor(report);
}

int RunOracle(const std::string& instance_path, bool linearized, double epsilon,
              std::ostream& out) {
  const Instance inst = ReadInstance(instance_path);
  const auto [lower, upper] = DefaultCapacityRange(inst);
  const Linearization lin = Linearize(inst.cost_function(), epsilon, lower, upper);
  const OracleResult result = OracleOptimum(inst, lin, !linearized);
  const Solution& s = result.solution;
  fmt::print(out, "model,{}\n", linearized ? "linearized" : "exact");
  fmt::print(out, "value,{:.10g}\n", result.value);
  fmt::print(out, "opening,{:.10g}\nserving,{:.10g}\naccess,{:.10g}\nwaiting,{:.10g}\n",
             s.cost.opening, s.cost.serving, s.cost.access, s.cost.waiting);
  out << "assignment";
  for (int i : s.assignment) out << ',' << i;
  out << "\ncapacity";
  for (double mu : s.capacity) fmt::print(out, ",{:.10g}", mu);
  out << '\n';
  return kExitConverged;
}

int RunCompare(const std::vector<std::string>& paths, const SolverFlags& flags,
               std::ostream& out) {
  out << CompareCsvHeader() << '\n';
  bool all_converged = true;
  for (const std::string& path : paths) {
    const Instance base = ReadInstance(path);
    for (CostFamily family : {CostFamily::kLinear, CostFamily::kSquareRoot,
                              CostFamily::kFractional}) {
      const Instance inst = base.WithFamily(family);
      const SolveReport report = Solve(inst, flags.config);
      all_converged = all_converged && report.converged();
      out << FormatCompareRow(MakeCompareRow(inst, report)) << '\n';
    }
  }
  return all_converged ? kExitConverged : kExitIterationLimit;
}

int RunLinearizeDump(const std::string& family_name, double epsilon, double lower,
                     double upper, std::ostream& out) {
  const Linearization lin =
      Linearize(CostFunction::Of(kFamilies.at(family_name)), epsilon, lower, upper);
  out << "k,tangent_point,left_breakpoint,right_breakpoint,slope,intercept\n";
  for (int k = 0; k < lin.size(); ++k) {
    const LinearPiece& p = lin.piece(k);
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", k + 1,
               p.tangent_point, lin.breakpoints()[k], lin.breakpoints()[k + 1],
               p.slope, p.intercept);
  }
  return kExitConverged;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Service system design with economies of scale: instance "
               "generation, Lagrangian solver, brute-force oracle"};
  app.name("eosssd");
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write random instance file(s)");
  std::uint64_t seed = 1;
  std::string family_name = "linear";
  std::optional<std::string> suite;
  int facilities = 0;
  int customers = 0;
  std::string output;
  std::string output_dir = ".";
  std::vector<double> fixed_range, demand_range, access_range;
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--family", family_name, "linear, sqrt or fractional")
      ->capture_default_str()
      ->check(CLI::IsMember(kFamilies));
  gen->add_option("--suite", suite, "Emit the 27-instance reference suite ('paper')");
  gen->add_option("--facilities", facilities, "Number of candidate facilities");
  gen->add_option("--customers", customers, "Number of customers");
  gen->add_option("--output,-o", output, "Output file (single instance)");
  gen->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();
  gen->add_option("--fixed-cost-range", fixed_range, "lo hi for f_i")->expected(2);
  gen->add_option("--demand-range", demand_range, "lo hi for lambda_j")->expected(2);
  gen->add_option("--access-range", access_range, "lo hi for a_ij")->expected(2);

  // solve
  auto* solve = app.add_subcommand("solve", "Run the Lagrangian heuristic on one instance");
  std::string instance_path;
  SolverFlags solve_flags;
  solve->add_option("instance", instance_path, "Instance file")->required();
  AddSolverFlags(solve, solve_flags);
  solve->add_option("--family", solve_flags.family,
                    "Re-cost the instance under another family (default c)")
      ->transform(CLI::CheckedTransformer(kFamilies));
  solve->add_option("--trace", solve_flags.trace_path, "Write per-iteration trace CSV");
  solve->add_option("--report", solve_flags.report_path,
                    "Append the report row to this CSV file");
  solve->add_flag("--json", solve_flags.json, "Print a JSON report instead of CSV");
  solve->add_flag("--no-header", solve_flags.no_header, "Omit the CSV header line");
  solve->add_option("--timing", solve_flags.timing,
                    "'wall' reports solve time, 'off' prints 0 for reproducible files")
      ->capture_default_str()
      ->check(CLI::IsMember({"wall", "off"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for tiny instances");
  std::string oracle_path;
  bool linearized = false;
  double oracle_epsilon = 0.01;
  oracle->add_option("instance", oracle_path, "Instance file")->required();
  oracle->add_flag("--linearized", linearized,
                   "Optimize the piecewise-linear model instead of the exact one");
  oracle->add_option("--epsilon", oracle_epsilon, "Linearization relative error")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Solve each instance under linear, sqrt and fractional costs");
  std::vector<std::string> compare_paths;
  SolverFlags compare_flags;
  compare->add_option("instances", compare_paths, "Instance files")->required();
  AddSolverFlags(compare, compare_flags);

  // linearize-dump
  auto* dump = app.add_subcommand("linearize-dump", "Print tangent pieces as CSV");
  std::string dump_family = "sqrt";
  double dump_epsilon = 0.01;
  double dump_lower = 1.0;
  double dump_upper = 1e4;
  dump->add_option("--family", dump_family, "sqrt, fractional or linear")
      ->capture_default_str()
      ->check(CLI::IsMember(kFamilies));
  dump->add_option("--epsilon", dump_epsilon, "Relative error")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  dump->add_option("--lower", dump_lower, "First breakpoint")->capture_default_str();
  dump->add_option("--upper", dump_upper, "Range end")->capture_default_str();

  std::vector<const char*> argv = {"eosssd"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      GeneratorOptions options;
      if (auto r = RangeOf(fixed_range)) options.fixed_cost = {r->first, r->second};
      if (auto r = RangeOf(demand_range)) options.demand_rate = {r->first, r->second};
      if (auto r = RangeOf(access_range)) options.access_cost = {r->first, r->second};
      return RunGenerate(seed, family_name, suite, facilities, customers, output,
                         output_dir, options, out);
    }
    if (solve->parsed()) return RunSolve(instance_path, solve_flags, out);
    if (oracle->parsed()) return RunOracle(oracle_path, linearized, oracle_epsilon, out);
    if (compare->parsed()) return RunCompare(compare_paths, compare_flags, out);
    if (dump->parsed()) {
      return RunLinearizeDump(dump_family, dump_epsilon, dump_lower, dump_upper, out);
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace eosssd::cli
