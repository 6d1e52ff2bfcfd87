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

// Lagrangian relaxation of the single-assignment constraints with subgradient
// dual ascent. Each iteration
//
//   1. solves every facility subproblem at the current multipliers u, giving
//      Lb = sum_i min(0, z_i) + sum_j u_j;
//   2. repairs the relaxed assignment into a feasible design (upper bound),
//      costed with the exact opening cost, and optionally improves it by
//      local search;
//   3. stops once (min Ub - Lb) / Lb <= tolerance;
//   4. otherwise moves u along v_j = 1 - sum_i y_ij.
//
// The facility loop in step 1 is the data-parallel kernel. LowerBoundSerial is
// the reference; LowerBoundParallel must reproduce it bit for bit.

#ifndef EOSSSD_LAGRANGIAN_H_
#define EOSSSD_LAGRANGIAN_H_

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eosssd/instance.h"
#include "eosssd/linearization.h"
#include "eosssd/solution.h"
#include "eosssd/subproblem.h"

namespace eosssd {

enum class StepNorm {
  kPaper,    // u += alpha (Ub - Lb) / ||v|| * v
  kSquared,  // u += alpha (Ub - Lb) / ||v||^2 * v
};

struct SolverConfig {
  double epsilon = 0.01;     // linearization relative error
  double tolerance = 0.01;   // stopping gap e
  int max_iterations = 10000;
  double initial_alpha = 0.01;
  int stall_window = 10;          // halve alpha after this many stalls in a row
  double stall_threshold = 1e-6;  // relative gain over the previous Lb
  StepNorm norm = StepNorm::kPaper;
  int threads = 1;
  bool record_trace = true;
  // Run ImproveLocally on every distinct repaired design.
  bool local_search = true;
  // Linearization range; DefaultCapacityRange(instance) when unset.
  std::optional<std::pair<double, double>> capacity_range;
};

// [1, U] with U = L + sqrt(w_max L / (c_min g'(L))) and L the total demand.
std::pair<double, double> DefaultCapacityRange(const Instance& instance);

struct LowerBoundResult {
  double value = 0.0;
  std::vector<SubproblemResult> facilities;
};

LowerBoundResult LowerBoundSerial(const Instance& instance,
                                  const Linearization& lin,
                                  std::span<const double> multipliers);

// OpenMP over facilities; the bound is summed in facility order afterwards.
LowerBoundResult LowerBoundParallel(const Instance& instance,
                                    const Linearization& lin,
                                    std::span<const double> multipliers,
                                    int threads);

LowerBoundResult LowerBound(const Instance& instance, const Linearization& lin,
                            std::span<const double> multipliers, int threads = 1);

// Builds a feasible design from relaxed facility solutions:
//   - facilities open in the relaxation stay open;
//   - a customer selected by one or more open facilities goes to the one with
//     the smallest (q_j / r_j) at that facility's chosen piece, an unselected
//     customer to the open facility with the smallest ratio;
//   - with nothing open, the single facility cheapest at serving everyone is
//     opened;
//   - facilities left empty are closed and capacities are re-optimized over
//     all pieces.
// The returned design is costed with the exact opening cost.
Solution Repair(const Instance& instance, const Linearization& lin,
                std::span<const SubproblemResult> relaxed);

struct DualState {
  std::vector<double> multipliers;
  double alpha = 0.01;
  int iteration = 0;
  double best_upper_bound = std::numeric_limits<double>::infinity();
  Solution best_solution;
  double best_lower_bound = -std::numeric_limits<double>::infinity();
  double previous_lower_bound = -std::numeric_limits<double>::infinity();
  int stall = 0;  // consecutive iterations whose Lb did not improve
  std::vector<double> lower_bounds;
  double subgradient_norm = 0.0;  // ||v|| of the last update

  static DualState Initial(const Instance& instance, double alpha);
};

enum class UpdateOutcome {
  kStepped,
  kFeasibleRelaxation,  // v = 0: the relaxed solution is feasible
};

// One subgradient step. Records `lower_bound` in the history, takes the step
// with the current alpha, then halves alpha once `stall_window` consecutive
// iterations failed to improve on the previous iteration's lower bound. Expects
// state.best_upper_bound to already include this iteration's upper bound.
UpdateOutcome UpdateMultipliers(DualState& state,
                                std::span<const SubproblemResult> relaxed,
                                double lower_bound, const SolverConfig& config);

// (best_ub - lb) / lb, or +infinity when lb <= 0.
double RelativeGap(double best_upper_bound, double lower_bound);

enum class StopReason {
  kGapReached,
  kFeasibleRelaxation,
  kIterationLimit,
};

struct TraceEntry {
  int iteration = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;  // this iteration's repaired design
  double best_upper_bound = 0.0;
  double gap = 0.0;
  double alpha = 0.0;            // step control used this iteration
  double subgradient_norm = 0.0;
  double best_linearized_cost = 0.0;  // best design under the linearized g
};

struct SolveReport {
  Solution solution;  // best feasible design; solution.cost is exact
  double gap = 0.0;   // at the last iteration
  double lower_bound = 0.0;       // Lb at the last iteration
  double best_lower_bound = 0.0;  // max over iterations
  int iterations = 0;
  double wall_ms = 0.0;
  StopReason stop = StopReason::kIterationLimit;
  int pieces = 0;
  std::vector<TraceEntry> trace;

  bool converged() const { return stop != StopReason::kIterationLimit; }
};

// Throws std::invalid_argument for a bad config or an instance with a zero
// operating cost (the capacity closed form needs c > 0).
SolveReport Solve(const Instance& instance, const SolverConfig& config);

// Same, with a caller-provided linearization.
SolveReport Solve(const Instance& instance, const Linearization& lin,
                  const SolverConfig& config);

}  // namespace eosssd

#endif  // EOSSSD_LAGRANGIAN_H_
