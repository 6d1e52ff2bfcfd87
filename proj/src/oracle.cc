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

#include "eosssd/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "eosssd/evaluator.h"

namespace eosssd {
namespace {

constexpr int kGridPoints = 10'000;
constexpr double kExactSearchWidening = 10.0;

template <typename F>
double GoldenSection(F f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-15 * std::abs(b); ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

struct FacilityOption {
  double cost = std::numeric_limits<double>::infinity();
  double capacity = 0.0;
};

}  // namespace

CapacityChoice MinimizeExactCapacity(const CostFunction& g, double operating_cost,
                                     double waiting_cost, double arrival_rate,
                                     double upper) {
  if (!(upper > arrival_rate)) {
    throw std::invalid_argument("capacity search range is empty");
  }
  // Work in the offset delta = mu - L, which spans many orders of magnitude.
  auto cost = [&](double delta) {
    return operating_cost * g.Value(arrival_rate + delta) +
           waiting_cost * arrival_rate / delta;
  };
  const double hi = upper - arrival_rate;
  const double lo = std::min(1e-9 * std::max(arrival_rate, 1.0), hi * 1e-9);
  const double ratio = std::pow(hi / lo, 1.0 / (kGridPoints - 1));

  std::vector<double> grid(kGridPoints);
  std::vector<double> values(kGridPoints);
  for (int n = 0; n < kGridPoints; ++n) {
    grid[n] = n + 1 == kGridPoints ? hi : lo * std::pow(ratio, n);
    values[n] = cost(grid[n]);
  }

  CapacityChoice best{arrival_rate + hi, values.back()};
  for (int n = 0; n < kGridPoints; ++n) {
    const bool left_ok = n == 0 || values[n] <= values[n - 1];
    const bool right_ok = n + 1 == kGridPoints || values[n] <= values[n + 1];
    if (!left_ok || !right_ok) continue;
    const double a = grid[n == 0 ? 0 : n - 1];
    const double b = grid[n + 1 == kGridPoints ? n : n + 1];
    double delta = a < b ? GoldenSection(cost, a, b) : grid[n];
    double value = cost(delta);
    if (values[n] < value) {
      delta = grid[n];
      value = values[n];
    }
    if (value < best.cost) best = {arrival_rate + delta, value};
  }
  return best;
}

OracleResult OracleOptimum(const Instance& instance, const Linearization& lin,
                           bool exact_g) {
  const int n_fac = instance.num_facilities();
  const int n_cust = instance.num_customers();
  if (n_fac > kOracleMaxFacilities || n_cust > kOracleMaxCustomers) {
    throw std::invalid_argument(fmt::format(
        "oracle is limited to {} facilities x {} customers, got {} x {}",
        kOracleMaxFacilities, kOracleMaxCustomers, n_fac, n_cust));
  }

  // Best cost of facility i serving exactly the customer subset `mask`.
  const int n_masks = 1 << n_cust;
  std::vector<FacilityOption> table(static_cast<size_t>(n_fac) * n_masks);
  for (int i = 0; i < n_fac; ++i) {
    const Facility& f = instance.facility(i);
    for (int mask = 1; mask < n_masks; ++mask) {
      double arrival = 0.0;
      double assignment_cost = 0.0;
      for (int j = 0; j < n_cust; ++j) {
        if ((mask >> j) & 1) {
          const double lambda = instance.customer(j).demand_rate;
          arrival += lambda;
          assignment_cost +=
              (f.serving_cost + instance.access_cost(i, j)) * lambda;
        }
      }
      FacilityOption option;
      if (exact_g) {
        const CapacityChoice choice = MinimizeExactCapacity(
            instance.cost_function(), f.operating_cost, f.waiting_cost, arrival,
            kExactSearchWidening * std::max(lin.upper(), arrival));
        option = {f.fixed_cost + assignment_cost + choice.cost, choice.capacity};
      } else {
        for (const LinearPiece& piece : lin.pieces()) {
          const double unit = f.operating_cost * piece.slope;
          const double mu = arrival + std::sqrt(f.waiting_cost * arrival / unit);
          const double opening =
              f.fixed_cost +
              f.operating_cost * (piece.value + piece.slope * (mu - piece.tangent_point));
          const double total =
              opening + assignment_cost + f.waiting_cost * arrival / (mu - arrival);
          if (total < option.cost) option = {total, mu};
        }
      }
      table[static_cast<size_t>(i) * n_masks + mask] = option;
    }
  }

  // Mixed-radix walk over all n_fac^n_cust assignment maps.
  std::vector<int> assign(n_cust, 0);
  std::vector<int> masks(n_fac, 0);
  OracleResult best;
  best.value = std::numeric_limits<double>::infinity();
  while (true) {
    std::fill(masks.begin(), masks.end(), 0);
    for (int j = 0; j < n_cust; ++j) masks[assign[j]] |= 1 << j;
    double total = 0.0;
    for (int i = 0; i < n_fac; ++i) {
      if (masks[i] != 0) total += table[static_cast<size_t>(i) * n_masks + masks[i]].cost;
    }
    if (total < best.value) {
      best.value = total;
      best.solution = Solution::Empty(instance);
      best.solution.assignment = assign;
      for (int i = 0; i < n_fac; ++i) {
        if (masks[i] == 0) continue;
        best.solution.open[i] = true;
        best.solution.capacity[i] =
            table[static_cast<size_t>(i) * n_masks + masks[i]].capacity;
      }
    }
    int pos = 0;
    while (pos < n_cust && ++assign[pos] == n_fac) assign[pos++] = 0;
    if (pos == n_cust) break;
  }
  best.solution.cost = exact_g ? Evaluate(instance, best.solution)
                               : Evaluate(instance, best.solution, lin);
  return best;
}

}  // namespace eosssd
