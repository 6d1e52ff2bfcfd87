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

#include "eosssd/local_search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "eosssd/evaluator.h"
#include "eosssd/subproblem.h"

namespace eosssd {
namespace {

struct Load {
  int members = 0;
  double rate = 0.0;
  double linear = 0.0;  // sum of (s + a_ij) lambda_j
  double cost = 0.0;
};

class Search {
 public:
  Search(const Instance& instance, const Linearization& lin,
         std::vector<int> assignment)
      : instance_(instance), lin_(lin), assignment_(std::move(assignment)),
        loads_(instance.num_facilities()) {
    for (int j = 0; j < instance_.num_customers(); ++j) {
      Add(loads_[assignment_[j]], assignment_[j], j, +1);
    }
    for (int i = 0; i < instance_.num_facilities(); ++i) Reprice(i, loads_[i]);
  }

  const std::vector<int>& assignment() const { return assignment_; }

  double Total() const {
    double total = 0.0;
    for (const Load& l : loads_) total += l.cost;
    return total;
  }

  // Best single-customer relocation for every customer, in id order.
  int RelocatePass() {
    int moves = 0;
    for (int j = 0; j < instance_.num_customers(); ++j) {
      const int from = assignment_[j];
      Load source = loads_[from];
      Add(source, from, j, -1);
      Reprice(from, source);
      int best_to = -1;
      double best_delta = -Threshold();
      Load best_target;
      for (int to = 0; to < instance_.num_facilities(); ++to) {
        if (to == from) continue;
        Load target = loads_[to];
        Add(target, to, j, +1);
        Reprice(to, target);
        const double delta =
            source.cost + target.cost - loads_[from].cost - loads_[to].cost;
        if (delta < best_delta) {
          best_delta = delta;
          best_to = to;
          best_target = target;
        }
      }
      if (best_to < 0) continue;
      loads_[from] = source;
      loads_[best_to] = best_target;
      assignment_[j] = best_to;
      ++moves;
    }
    return moves;
  }

  // Tries closing each open facility in turn; keeps the first that saves.
  bool ClosePass() {
    const int n_fac = instance_.num_facilities();
    for (int s = 0; s < n_fac; ++s) {
      if (loads_[s].members == 0) continue;
      std::vector<Load> trial = loads_;
      std::vector<int> moved = assignment_;
      trial[s] = Load{};
      bool possible = false;
      for (int j = 0; j < instance_.num_customers(); ++j) {
        if (assignment_[j] != s) continue;
        int best_to = -1;
        double best_delta = std::numeric_limits<double>::infinity();
        Load best_target;
        for (int to = 0; to < n_fac; ++to) {
          if (to == s || trial[to].members == 0) continue;
          Load target = trial[to];
          Add(target, to, j, +1);
          Reprice(to, target);
          const double delta = target.cost - trial[to].cost;
          if (delta < best_delta) {
            best_delta = delta;
            best_to = to;
            best_target = target;
          }
        }
        if (best_to < 0) break;
        possible = true;
        trial[best_to] = best_target;
        moved[j] = best_to;
      }
      if (!possible) continue;
      double total = 0.0;
      for (const Load& l : trial) total += l.cost;
      if (total < Total() - Threshold()) {
        loads_ = std::move(trial);
        assignment_ = std::move(moved);
        return true;
      }
    }
    return false;
  }

 private:
  double Threshold() const { return 1e-9 * std::max(1.0, std::abs(Total())); }

  void Add(Load& load, int i, int j, int sign) const {
    const double lambda = instance_.customer(j).demand_rate;
    load.members += sign;
    if (load.members == 0) {
      load.rate = 0.0;
      load.linear = 0.0;
      return;
    }
    load.rate += sign * lambda;
    load.linear +=
        sign * (instance_.facility(i).serving_cost + instance_.access_cost(i, j)) *
        lambda;
  }

  void Reprice(int i, Load& load) const {
    load.cost = FacilityExactCost(instance_, lin_, i, load.members, load.rate,
                                  load.linear);
  }

  const Instance& instance_;
  const Linearization& lin_;
  std::vector<int> assignment_;
  std::vector<Load> loads_;
};

}  // namespace

double FacilityExactCost(const Instance& instance, const Linearization& lin,
                         int facility, int members, double arrival_rate,
                         double linear_cost) {
  if (members == 0) return 0.0;
  const Facility& f = instance.facility(facility);
  const double mu = BestPieceForRate(instance, lin, facility, arrival_rate).second;
  return f.fixed_cost + f.operating_cost * instance.cost_function().Value(mu) +
         linear_cost + Mm1Wait(mu, arrival_rate) * f.waiting_cost * arrival_rate;
}

Solution ImproveLocally(const Instance& instance, const Linearization& lin,
                        const Solution& start, int max_passes,
                        LocalSearchStats* stats) {
  Search search(instance, lin, start.assignment);
  LocalSearchStats local;
  for (int pass = 0; pass < max_passes; ++pass) {
    ++local.passes;
    const int moves = search.RelocatePass();
    local.relocations += moves;
    bool closed = false;
    if (moves == 0) {
      closed = search.ClosePass();
      if (closed) ++local.closures;
    }
    if (moves == 0 && !closed) break;
  }
  if (stats != nullptr) *stats = local;

  Solution result = Solution::Empty(instance);
  result.assignment = search.assignment();
  std::vector<double> rate(instance.num_facilities(), 0.0);
  for (int j = 0; j < instance.num_customers(); ++j) {
    rate[result.assignment[j]] += instance.customer(j).demand_rate;
  }
  for (int i = 0; i < instance.num_facilities(); ++i) {
    result.open[i] = rate[i] > 0.0;
    result.capacity[i] =
        result.open[i] ? BestPieceForRate(instance, lin, i, rate[i]).second : 0.0;
  }
  result.cost = Evaluate(instance, result);
  return result.cost.total < start.cost.total ? result : start;
}

}  // namespace eosssd
