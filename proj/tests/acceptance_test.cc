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

// Acceptance suite. Prints one PASS/FAIL line per criterion and returns
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.h"
#include "eosssd/cost_function.h"
#include "eosssd/evaluator.h"
#include "eosssd/instance.h"
#include "eosssd/lagrangian.h"
#include "eosssd/linearization.h"
#include "eosssd/oracle.h"
#include "eosssd/subproblem.h"

namespace eosssd {
namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

constexpr CostFamily kFamilies[] = {CostFamily::kLinear, CostFamily::kSquareRoot,
                                    CostFamily::kFractional};

Verdict ErrorBound() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> sample(1.0, 1e4);
  bool pass = true;
  std::string detail;
  for (CostFamily family : {CostFamily::kSquareRoot, CostFamily::kFractional}) {
    const CostFunction g = CostFunction::Of(family);
    const auto start = Clock::now();
    for (double eps : {0.1, 0.01, 0.001}) {
      const Linearization lin = Linearize(g, eps, 1.0, 1e4);
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int s = 0; s < 100000; ++s) {
        const double mu = sample(rng);
        const double rel = (lin.Evaluate(mu) - g.Value(mu)) / g.Value(mu);
        lo = std::min(lo, rel);
        hi = std::max(hi, rel);
      }
      // Round-off in g and the envelope is a few ulps.
      const bool ok = lo >= -1e-12 && hi <= eps * (1.0 + 1e-12);
      pass = pass && ok;
      detail += fmt::format("{} eps={} max={:.3e} min={:.1e}; ", FamilyName(family),
                            eps, hi, lo);
    }
    const double seconds = SecondsSince(start);
    pass = pass && seconds < 1.0;
    detail += fmt::format("{} {:.3f}s; ", FamilyName(family), seconds);
  }
  return {pass, detail};
}

double RelativeDifference(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

Verdict ClosedFormVersusNumeric() {
  bool pass = true;
  const CostFunction sqrt_g = CostFunction::SquareRoot();
  const Linearization closed = Linearize(sqrt_g, 0.01, 1.0, 1e30, LinearizeMethod::kClosedForm);
  const Linearization numeric = Linearize(sqrt_g, 0.01, 1.0, 1e30, LinearizeMethod::kNumeric);
  double worst_sqrt = 0.0;
  if (closed.size() < 50 || numeric.size() < 50) return {false, "fewer than 50 pieces"};
  for (int k = 0; k < 50; ++k) {
    worst_sqrt = std::max(worst_sqrt, RelativeDifference(closed.piece(k).tangent_point,
                                                         numeric.piece(k).tangent_point));
    worst_sqrt = std::max(worst_sqrt, RelativeDifference(closed.breakpoints()[k + 1],
                                                         numeric.breakpoints()[k + 1]));
  }
  pass = pass && worst_sqrt <= 1e-8;

  // Fractional: the closed form either agrees with the numeric path, or the
  // fallback fired; either way the numeric pieces satisfy both equations.
  const CostFunction frac = CostFunction::Fractional();
  double worst_frac = 0.0;
  double worst_residual = 0.0;
  bool any_fallback = false;
  for (double eps : {0.1, 0.01, 0.001}) {
    const Linearization a = Linearize(frac, eps, 1.0, 1e4, LinearizeMethod::kAuto);
    const Linearization b = Linearize(frac, eps, 1.0, 1e4, LinearizeMethod::kNumeric);
    any_fallback = any_fallback || a.used_numeric_fallback();
    if (a.size() != b.size()) return {false, "fractional piece counts differ"};
    const int n = a.size() - (b.has_terminal_piece() ? 1 : 0);
    for (int k = 0; k < n; ++k) {
      worst_frac = std::max(worst_frac, RelativeDifference(a.piece(k).tangent_point,
                                                           b.piece(k).tangent_point));
      const double mu = b.piece(k).tangent_point;
      worst_residual = std::max(
          worst_residual, std::abs(TangentResidual(frac, b.breakpoints()[k], mu, eps)));
      const double next = b.breakpoints()[k + 1];
      if (std::isfinite(next) && next < b.upper()) {
        worst_residual =
            std::max(worst_residual, std::abs(BreakpointResidual(frac, mu, next, eps)));
      }
    }
  }
  pass = pass && (worst_frac <= 1e-8 || any_fallback) && worst_residual <= 1e-10;
  return {pass, fmt::format("sqrt max rel diff {:.2e}; fractional max rel diff {:.2e}, "
                            "fallback {}, max residual {:.2e}",
                            worst_sqrt, worst_frac, any_fallback ? "yes" : "no",
                            worst_residual)};
}

// Exhaustive inner minimum; ties go to the smaller subset, then the smaller mask.
InnerSolution EnumerateInner(const std::vector<double>& q, const std::vector<double>& r,
                             const std::vector<double>& u) {
  const int n = static_cast<int>(q.size());
  InnerSolution best;
  int best_size = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double linear = 0.0;
    double weight = 0.0;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1u) {
        linear += q[j] - u[j];
        weight += r[j];
      }
    }
    const double value = linear + std::sqrt(weight);
    const int size = __builtin_popcount(mask);
    if (value < best.value || (value == best.value && size < best_size)) {
      best.value = value;
      best_size = size;
      best.selected.clear();
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1u) best.selected.push_back(j);
      }
    }
  }
  return best;
}

Verdict InnerExactness() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> q_dist(0.0, 60.0);
  std::uniform_real_distribution<double> r_dist(1.0, 400.0);
  std::uniform_real_distribution<double> u_dist(0.0, 80.0);
  const auto start = Clock::now();
  int mismatches = 0;
  int mixed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> q(12), r(12), u(12);
    bool negative = false;
    bool positive = false;
    for (int j = 0; j < 12; ++j) {
      q[j] = q_dist(rng);
      r[j] = r_dist(rng);
      u[j] = u_dist(rng);
      (q[j] < u[j] ? negative : positive) = true;
    }
    mixed += negative && positive;
    const InnerSolution oracle = EnumerateInner(q, r, u);
    const InnerSolution fast = SolveInner(q, r, u);
    const bool same = std::abs(fast.value - oracle.value) <=
                          1e-9 * (1.0 + std::abs(oracle.value)) &&
                      fast.selected == oracle.selected;
    mismatches += !same;
  }
  const double seconds = SecondsSince(start);
  return {mismatches == 0 && seconds < 5.0,
          fmt::format("{} mismatches in 200 ({} with mixed signs), {:.3f}s", mismatches,
                      mixed, seconds)};
}

Verdict CapacityStationarity() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> rate(0.5, 2000.0);
  std::uniform_real_distribution<double> wait(1.0, 500.0);
  std::uniform_real_distribution<double> log_cost(-4.0, 2.0);
  int failures = 0;
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const double lambda = rate(rng);
    const double w = wait(rng);
    const double cg = std::pow(10.0, log_cost(rng));
    const double mu = OptimalCapacity(lambda, w, cg);
    auto cost = [&](double m) { return cg * m + w * lambda / (m - lambda); };
    const double h = 1e-6 * (mu - lambda);
    const double derivative = (cost(mu + h) - cost(mu - h)) / (2.0 * h);
    // Scale: magnitude of either term of the derivative.
    const double scale = cg + w * lambda / ((mu - lambda) * (mu - lambda));
    const double ratio = std::abs(derivative) / scale;
    worst = std::max(worst, ratio);
    failures += !(mu > lambda) || ratio >= 1e-6;
  }
  return {failures == 0,
          fmt::format("{} failures in 1000 draws, worst |f'|/scale {:.2e}", failures, worst)};
}

struct TinyCase {
  Instance instance;
  Linearization lin;
};

std::vector<TinyCase> TinyCases() {
  std::vector<TinyCase> cases;
  for (int k = 0; k < 50; ++k) {
    const int facilities = 1 + k % 3;
    const int customers = 1 + (k / 3) % 6;
    const Instance inst = GenerateInstance(facilities, customers, 9000 + k, kFamilies[k % 3]);
    const auto [lo, hi] = DefaultCapacityRange(inst);
    cases.push_back({inst, Linearize(inst.cost_function(), 0.01, lo, hi)});
  }
  return cases;
}

Verdict Sandwich(const std::vector<TinyCase>& cases,
                 const std::vector<SolveReport>& reports) {
  int violations = 0;
  int iterations = 0;
  for (size_t n = 0; n < cases.size(); ++n) {
    const double optimum = OracleOptimum(cases[n].instance, cases[n].lin, false).value;
    const double slack = 1e-9 * std::abs(optimum);
    for (const TraceEntry& e : reports[n].trace) {
      ++iterations;
      violations += e.lower_bound > optimum + slack;
      violations += optimum > e.best_linearized_cost + slack;
    }
  }
  return {violations == 0,
          fmt::format("{} violations over {} iterations", violations, iterations)};
}

Verdict OracleQuality(const std::vector<TinyCase>& cases,
                      const std::vector<SolveReport>& reports,
                      const std::vector<double>& seconds) {
  int within2 = 0;
  int within5 = 0;
  double worst = 0.0;
  double slowest = 0.0;
  for (size_t n = 0; n < cases.size(); ++n) {
    const double optimum = OracleOptimum(cases[n].instance, cases[n].lin, true).value;
    const double excess = (reports[n].solution.cost.total - optimum) / optimum;
    worst = std::max(worst, excess);
    within2 += excess <= 0.02;
    within5 += excess <= 0.05;
    slowest = std::max(slowest, seconds[n]);
  }
  const int total = static_cast<int>(cases.size());
  return {within2 >= 45 && within5 == total && slowest < 1.0,
          fmt::format("{}/{} within 2%, {}/{} within 5%, worst {:.3f}%, slowest {:.3f}s",
                      within2, total, within5, total, 100.0 * worst, slowest)};
}

struct SuiteRun {
  CostFamily family;
  std::string name;
  SolveReport report;
  double seconds = 0.0;
};

std::vector<SuiteRun> RunSuite() {
  std::vector<SuiteRun> runs;
  for (CostFamily family : kFamilies) {
    for (const Instance& inst : GenerateSuite(7, family)) {
      const auto start = Clock::now();
      SolveReport report = Solve(inst, SolverConfig{});
      runs.push_back({family, inst.name(), std::move(report), SecondsSince(start)});
    }
  }
  return runs;
}

Verdict ScaleTrend(const std::vector<SuiteRun>& runs) {
  double open[3] = {};
  double capacity[3] = {};
  double waiting[3] = {};
  int count[3] = {};
  for (const SuiteRun& run : runs) {
    const int f = static_cast<int>(run.family);
    open[f] += run.report.solution.NumOpen();
    capacity[f] += run.report.solution.AverageCapacity();
    waiting[f] += run.report.solution.cost.Shares()[3];
    ++count[f];
  }
  for (int f = 0; f < 3; ++f) {
    open[f] /= count[f];
    capacity[f] /= count[f];
    waiting[f] /= count[f];
  }
  const bool pass = open[1] <= open[0] && open[2] <= open[0] && capacity[1] > capacity[0] &&
                    capacity[2] > capacity[0] && waiting[2] < waiting[0];
  return {pass,
          fmt::format("mean open {:.2f}/{:.2f}/{:.2f}, mean capacity {:.1f}/{:.1f}/{:.1f}, "
                      "mean waiting share {:.2f}%/{:.2f}%/{:.2f}% (linear/sqrt/fractional)",
                      open[0], open[1], open[2], capacity[0], capacity[1], capacity[2],
                      waiting[0], waiting[1], waiting[2])};
}

Verdict Convergence(const std::vector<SuiteRun>& runs) {
  int converged = 0;
  double slowest = 0.0;
  std::string stuck;
  for (const SuiteRun& run : runs) {
    if (run.report.converged()) {
      ++converged;
    } else {
      stuck += fmt::format(" {}/{}:{:.3f}", run.name, FamilyName(run.family), run.report.gap);
    }
    slowest = std::max(slowest, run.seconds);
  }
  const int total = static_cast<int>(runs.size());
  return {10 * converged >= 9 * total && slowest < 60.0,
          fmt::format("{}/{} converged ({:.1f}%), slowest {:.2f}s; gap at limit:{}",
                      converged, total, 100.0 * converged / total, slowest, stuck)};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict Determinism() {
  const fs::path dir = fs::temp_directory_path() / "eosssd_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string instance = (dir / "p.inst").string();
  std::ostringstream sink;
  cli::Run({"generate", "--seed", "11", "--family", "sqrt", "--facilities", "20",
            "--customers", "80", "-o", instance},
           sink, sink);
  bool pass = true;
  std::string detail;
  for (const std::string threads : {"1", "4"}) {
    std::string contents[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path trace = dir / fmt::format("trace_{}_{}.csv", threads, run);
      const fs::path report = dir / fmt::format("report_{}_{}.csv", threads, run);
      cli::Run({"solve", instance, "--trace", trace.string(), "--report", report.string(),
                "--timing", "off", "--parallel", threads, "--max-iters", "2000"},
               sink, sink);
      contents[run] = Slurp(trace) + '\n' + Slurp(report);
    }
    const bool same = !contents[0].empty() && contents[0] == contents[1];
    pass = pass && same;
    detail += fmt::format("--parallel {}: {} ({} bytes); ", threads,
                          same ? "identical" : "differ", contents[0].size());
  }
  fs::remove_all(dir);
  return {pass, detail};
}

}  // namespace
}  // namespace eosssd

int main() {
  using namespace eosssd;
  int failures = 0;
  auto report = [&](int number, const char* title, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title
              << " [" << v.detail << "]" << std::endl;
    failures += !v.pass;
  };

  report(1, "linearization relative error within [0, eps]", ErrorBound());
  report(2, "closed-form tangent steps match numeric root-finding",
         ClosedFormVersusNumeric());
  report(3, "sort-and-scan matches 2^12 enumeration", InnerExactness());
  report(4, "optimal capacity is stationary", CapacityStationarity());

  const std::vector<TinyCase> cases = TinyCases();
  std::vector<SolveReport> tiny;
  std::vector<double> seconds;
  for (const TinyCase& c : cases) {
    const auto start = Clock::now();
    tiny.push_back(Solve(c.instance, c.lin, SolverConfig{}));
    seconds.push_back(SecondsSince(start));
  }
  report(5, "weak-duality sandwich on 50 oracle-scale instances", Sandwich(cases, tiny));
  report(6, "heuristic within 2%/5% of the exact optimum", OracleQuality(cases, tiny, seconds));

  const std::vector<SuiteRun> runs = RunSuite();
  report(7, "economies-of-scale trend on the 27-instance suite", ScaleTrend(runs));
  report(8, "at least 90% of suite solves stop on the gap, each under 60s",
         Convergence(runs));
  report(9, "solve output is byte-identical across runs", Determinism());

  std::cout << (failures == 0 ? "ALL PASS" : fmt::format("{} criteria failed", failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
