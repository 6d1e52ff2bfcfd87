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

#include "eosssd/lagrangian.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "eosssd/evaluator.h"
#include "eosssd/local_search.h"

namespace eosssd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double SumBound(std::span<const SubproblemResult> facilities,
                std::span<const double> multipliers) {
  double value = 0.0;
  for (const SubproblemResult& r : facilities) value += std::min(0.0, r.objective);
  for (double u : multipliers) value += u;
  return value;
}

// q_j / r_j at the facility's relaxed piece. lambda_j cancels.
double AssignmentRatio(const Instance& instance, const Linearization& lin,
                       const SubproblemResult& relaxed, int j) {
  const Facility& f = instance.facility(relaxed.facility);
  const double unit_cost = f.operating_cost * lin.piece(relaxed.piece).slope;
  return (f.serving_cost + instance.access_cost(relaxed.facility, j) + unit_cost) /
         (4.0 * f.waiting_cost * unit_cost);
}

// Opens the facilities marked in `solution.open` that have customers, sets
// capacities from the best piece, and costs the design exactly.
void Finalize(const Instance& instance, const Linearization& lin,
              Solution& solution) {
  const int n_fac = instance.num_facilities();
  std::vector<std::vector<int>> members(n_fac);
  for (int j = 0; j < instance.num_customers(); ++j) {
    members[solution.assignment[j]].push_back(j);
  }
  for (int i = 0; i < n_fac; ++i) {
    solution.open[i] = !members[i].empty();
    solution.capacity[i] =
        solution.open[i] ? BestPieceCapacity(instance, lin, i, members[i]).second
                         : 0.0;
  }
  solution.cost = Evaluate(instance, solution);
}

Solution SingleFacilityFallback(const Instance& instance,
                                const Linearization& lin) {
  Solution best;
  best.cost.total = kInf;
  for (int i = 0; i < instance.num_facilities(); ++i) {
    Solution candidate = Solution::Empty(instance);
    std::fill(candidate.assignment.begin(), candidate.assignment.end(), i);
    Finalize(instance, lin, candidate);
    if (candidate.cost.total < best.cost.total) best = std::move(candidate);
  }
  return best;
}

}  // namespace

std::pair<double, double> DefaultCapacityRange(const Instance& instance) {
  const double demand = instance.total_demand();
  double max_wait = 0.0;
  double min_operating = kInf;
  for (const Facility& f : instance.facilities()) {
    max_wait = std::max(max_wait, f.waiting_cost);
    min_operating = std::min(min_operating, f.operating_cost);
  }
  const double lower = 1.0;
  const double slope = instance.cost_function().Derivative(std::max(demand, lower));
  double upper = demand + std::sqrt(max_wait * demand / (min_operating * slope));
  if (!std::isfinite(upper) || upper <= 2.0 * lower) upper = std::max(2.0 * lower, demand * 2.0);
  return {lower, upper};
}

LowerBoundResult LowerBoundSerial(const Instance& instance,
                                  const Linearization& lin,
                                  std::span<const double> multipliers) {
  LowerBoundResult result;
  result.facilities.reserve(instance.num_facilities());
  SubproblemWorkspace workspace;
  for (int i = 0; i < instance.num_facilities(); ++i) {
    result.facilities.push_back(SolveFacility(instance, lin, i, multipliers, &workspace));
  }
  result.value = SumBound(result.facilities, multipliers);
  return result;
}

LowerBoundResult LowerBoundParallel(const Instance& instance,
                                    const Linearization& lin,
                                    std::span<const double> multipliers,
                                    int threads) {
  const int n_fac = instance.num_facilities();
  LowerBoundResult result;
  result.facilities.resize(n_fac);
#pragma omp parallel num_threads(std::max(threads, 1))
  {
    SubproblemWorkspace workspace;
#pragma omp for schedule(static)
    for (int i = 0; i < n_fac; ++i) {
      result.facilities[i] = SolveFacility(instance, lin, i, multipliers, &workspace);
    }
  }
  result.value = SumBound(result.facilities, multipliers);
  return result;
}

LowerBoundResult LowerBound(const Instance& instance, const Linearization& lin,
                            std::span<const double> multipliers, int threads) {
  if (threads <= 1) return LowerBoundSerial(instance, lin, multipliers);
  return LowerBoundParallel(instance, lin, multipliers, threads);
}

Solution Repair(const Instance& instance, const Linearization& lin,
                std::span<const SubproblemResult> relaxed) {
  const int n_cust = instance.num_customers();
  std::vector<int> open_facilities;
  for (const SubproblemResult& r : relaxed) {
    if (r.open) open_facilities.push_back(r.facility);
  }
  if (open_facilities.empty()) return SingleFacilityFallback(instance, lin);

  // Best selecting facility per customer, and best open facility overall.
  std::vector<int> selected_by(n_cust, kUnassigned);
  std::vector<double> selected_ratio(n_cust, kInf);
  for (const SubproblemResult& r : relaxed) {
    if (!r.open) continue;
    for (int j : r.selected) {
      const double ratio = AssignmentRatio(instance, lin, r, j);
      if (ratio < selected_ratio[j]) {
        selected_ratio[j] = ratio;
        selected_by[j] = r.facility;
      }
    }
  }

  Solution solution = Solution::Empty(instance);
  for (int j = 0; j < n_cust; ++j) {
    if (selected_by[j] != kUnassigned) {
      solution.assignment[j] = selected_by[j];
      continue;
    }
    double best_ratio = kInf;
    for (int i : open_facilities) {
      const double ratio = AssignmentRatio(instance, lin, relaxed[i], j);
      if (ratio < best_ratio) {
        best_ratio = ratio;
        solution.assignment[j] = i;
      }
    }
  }
  Finalize(instance, lin, solution);
  return solution;
}

DualState DualState::Initial(const Instance& instance, double alpha) {
  DualState state;
  state.multipliers.assign(instance.num_customers(), 0.0);
  state.alpha = alpha;
  state.best_solution = Solution::Empty(instance);
  return state;
}

UpdateOutcome UpdateMultipliers(DualState& state,
                                std::span<const SubproblemResult> relaxed,
                                double lower_bound, const SolverConfig& config) {
  const int n_cust = static_cast<int>(state.multipliers.size());
  std::vector<double> subgradient(n_cust, 1.0);
  for (const SubproblemResult& r : relaxed) {
    for (int j : r.selected) subgradient[j] -= 1.0;
  }
  double norm_sq = 0.0;
  for (double v : subgradient) norm_sq += v * v;
  state.subgradient_norm = std::sqrt(norm_sq);
  state.lower_bounds.push_back(lower_bound);
  ++state.iteration;

  // A stall is an iteration whose Lb does not beat the previous one by the
  // relative threshold.
  const bool improved =
      !std::isfinite(state.previous_lower_bound) ||
      lower_bound - state.previous_lower_bound >
          config.stall_threshold * std::max(std::abs(state.previous_lower_bound), 1.0);
  state.previous_lower_bound = lower_bound;
  if (lower_bound > state.best_lower_bound) state.best_lower_bound = lower_bound;

  if (norm_sq == 0.0) return UpdateOutcome::kFeasibleRelaxation;

  const double divisor =
      config.norm == StepNorm::kPaper ? state.subgradient_norm : norm_sq;
  const double step = state.alpha * (state.best_upper_bound - lower_bound) / divisor;
  for (int j = 0; j < n_cust; ++j) state.multipliers[j] += step * subgradient[j];

  if (improved) {
    state.stall = 0;
  } else if (++state.stall >= config.stall_window) {
    state.alpha *= 0.5;
    state.stall = 0;
  }
  return UpdateOutcome::kStepped;
}

double RelativeGap(double best_upper_bound, double lower_bound) {
  if (!(lower_bound > 0)) return kInf;
  return (best_upper_bound - lower_bound) / lower_bound;
}

SolveReport Solve(const Instance& instance, const SolverConfig& config) {
  const auto [lower, upper] =
      config.capacity_range.value_or(DefaultCapacityRange(instance));
  const Linearization lin =
      Linearize(instance.cost_function(), config.epsilon, lower, upper);
  return Solve(instance, lin, config);
}

SolveReport Solve(const Instance& instance, const Linearization& lin,
                  const SolverConfig& config) {
  if (!(config.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (config.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be at least 1");
  }
  if (!(config.initial_alpha > 0 && config.initial_alpha < 2)) {
    throw std::invalid_argument("initial alpha must lie in (0, 2)");
  }
  if (config.stall_window < 1) throw std::invalid_argument("stall window must be at least 1");
  for (const Facility& f : instance.facilities()) {
    if (!(f.operating_cost > 0)) {
      throw std::invalid_argument("solver needs a positive operating cost at every facility");
    }
  }

  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  report.pieces = lin.size();
  DualState state = DualState::Initial(instance, config.initial_alpha);
  std::set<std::vector<int>> searched;
  double best_linearized = kInf;

  for (int t = 1; t <= config.max_iterations; ++t) {
    const LowerBoundResult bound =
        LowerBound(instance, lin, state.multipliers, config.threads);
    Solution repaired = Repair(instance, lin, bound.facilities);
    if (config.local_search && searched.insert(repaired.assignment).second) {
      repaired = ImproveLocally(instance, lin, repaired);
    }
    const double upper_bound = repaired.cost.total;
    if (upper_bound < state.best_upper_bound) {
      state.best_upper_bound = upper_bound;
      state.best_solution = std::move(repaired);
      if (config.record_trace) {
        best_linearized = Evaluate(instance, state.best_solution, lin).total;
      }
    }
    const double gap = RelativeGap(state.best_upper_bound, bound.value);

    report.iterations = t;
    report.gap = gap;
    report.lower_bound = bound.value;
    TraceEntry entry{t, bound.value, upper_bound, state.best_upper_bound,
                     gap, state.alpha, 0.0, best_linearized};

    if (gap <= config.tolerance) {
      report.stop = StopReason::kGapReached;
      state.best_lower_bound = std::max(state.best_lower_bound, bound.value);
      if (config.record_trace) report.trace.push_back(entry);
      break;
    }
    const UpdateOutcome outcome =
        UpdateMultipliers(state, bound.facilities, bound.value, config);
    entry.subgradient_norm = state.subgradient_norm;
    if (config.record_trace) report.trace.push_back(entry);
    if (outcome == UpdateOutcome::kFeasibleRelaxation) {
      report.stop = StopReason::kFeasibleRelaxation;
      break;
    }
  }

  report.solution = std::move(state.best_solution);
  report.best_lower_bound = state.best_lower_bound;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace eosssd
