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

#include "eosssd/evaluator.h"

#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace eosssd {
namespace {

template <typename OpeningCost>
CostBreakdown EvaluateWith(const Instance& instance, const Solution& solution,
                           OpeningCost opening_cost) {
  CheckFeasible(instance, solution);
  const int n_fac = instance.num_facilities();
  std::vector<double> arrival(n_fac, 0.0);
  CostBreakdown cost;
  for (int j = 0; j < instance.num_customers(); ++j) {
    const int i = solution.assignment[j];
    const double lambda = instance.customer(j).demand_rate;
    arrival[i] += lambda;
    cost.serving += instance.facility(i).serving_cost * lambda;
    cost.access += instance.access_cost(i, j) * lambda;
  }
  for (int i = 0; i < n_fac; ++i) {
    if (!solution.open[i]) continue;
    const Facility& f = instance.facility(i);
    cost.opening += f.fixed_cost + f.operating_cost * opening_cost(solution.capacity[i]);
    cost.waiting += f.waiting_cost * arrival[i] * Mm1Wait(solution.capacity[i], arrival[i]);
  }
  cost.total = cost.opening + cost.serving + cost.access + cost.waiting;
  return cost;
}

}  // namespace

double Mm1Wait(double capacity, double arrival_rate) {
  if (!(arrival_rate >= 0)) {
    throw SteadyStateError("arrival rate must be non-negative");
  }
  if (!(capacity > arrival_rate)) {
    throw SteadyStateError(fmt::format(
        "no steady state: service rate {} does not exceed arrival rate {}",
        capacity, arrival_rate));
  }
  return 1.0 / (capacity - arrival_rate);
}

void CheckFeasible(const Instance& instance, const Solution& solution) {
  const int n_fac = instance.num_facilities();
  const int n_cust = instance.num_customers();
  if (static_cast<int>(solution.open.size()) != n_fac ||
      static_cast<int>(solution.capacity.size()) != n_fac ||
      static_cast<int>(solution.assignment.size()) != n_cust) {
    throw InfeasibleSolutionError("solution dimensions do not match the instance");
  }
  std::vector<double> arrival(n_fac, 0.0);
  for (int j = 0; j < n_cust; ++j) {
    const int i = solution.assignment[j];
    if (i == kUnassigned) {
      throw InfeasibleSolutionError(fmt::format("customer {} is unassigned", j));
    }
    if (i < 0 || i >= n_fac) {
      throw InfeasibleSolutionError(
          fmt::format("customer {} assigned to unknown facility {}", j, i));
    }
    if (!solution.open[i]) {
      throw InfeasibleSolutionError(
          fmt::format("customer {} assigned to closed facility {}", j, i));
    }
    arrival[i] += instance.customer(j).demand_rate;
  }
  for (int i = 0; i < n_fac; ++i) {
    const double mu = solution.capacity[i];
    if (!solution.open[i]) {
      if (mu != 0.0) {
        throw InfeasibleSolutionError(
            fmt::format("closed facility {} has capacity {}", i, mu));
      }
      continue;
    }
    if (!(mu > arrival[i]) || !std::isfinite(mu)) {
      throw SteadyStateError(fmt::format(
          "facility {}: capacity {} does not exceed arrival rate {}", i, mu,
          arrival[i]));
    }
  }
}

CostBreakdown Evaluate(const Instance& instance, const Solution& solution) {
  const CostFunction& g = instance.cost_function();
  return EvaluateWith(instance, solution, [&g](double mu) { return g.Value(mu); });
}

CostBreakdown Evaluate(const Instance& instance, const Solution& solution,
                       const Linearization& lin) {
  return EvaluateWith(instance, solution,
                      [&lin](double mu) { return lin.Evaluate(mu); });
}

}  // namespace eosssd
