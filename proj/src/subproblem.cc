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

#include "eosssd/subproblem.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eosssd {
namespace {

struct PrefixChoice {
  double value = 0.0;
  int prefix = 0;  // number of sorted candidates taken
};

// Partitions customers, sorts the candidates into ws.order and scans
// prefixes. The optimal selection is ws.forced plus the first `prefix`
// entries of ws.order.
PrefixChoice ScanPrefixes(std::span<const double> q, std::span<const double> r,
                          std::span<const double> u, InnerStats* stats,
                          SubproblemWorkspace& ws) {
  ws.order.clear();
  ws.forced.clear();
  double forced_reduced = 0.0;
  double forced_weight = 0.0;
  const int n = static_cast<int>(q.size());
  for (int j = 0; j < n; ++j) {
    const double reduced = q[j] - u[j];
    if (reduced >= 0) continue;
    if (r[j] == 0) {
      ws.forced.push_back(j);
      forced_reduced += reduced;
      forced_weight += r[j];
    } else {
      ws.order.emplace_back(reduced / r[j], j);
    }
  }
  if (stats != nullptr) {
    std::sort(ws.order.begin(), ws.order.end(),
              [stats](const auto& a, const auto& b) {
                ++stats->comparisons;
                return a < b;
              });
  } else {
    std::sort(ws.order.begin(), ws.order.end());
  }

  PrefixChoice best;
  best.value = forced_reduced + std::sqrt(forced_weight);
  double reduced_sum = forced_reduced;
  double weight_sum = forced_weight;
  for (int m = 0; m < static_cast<int>(ws.order.size()); ++m) {
    const int j = ws.order[m].second;
    reduced_sum += q[j] - u[j];
    weight_sum += r[j];
    const double value = reduced_sum + std::sqrt(weight_sum);
    if (value < best.value) {
      best.value = value;
      best.prefix = m + 1;
    }
  }
  return best;
}

std::vector<int> Selection(const SubproblemWorkspace& ws, int prefix) {
  std::vector<int> selected = ws.forced;
  for (int m = 0; m < prefix; ++m) selected.push_back(ws.order[m].second);
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace

PieceConstants ComputePieceConstants(const Instance& instance,
                                     const Linearization& lin, int facility,
                                     int piece) {
  const Facility& f = instance.facility(facility);
  const LinearPiece& lp = lin.piece(piece);
  const double unit_cost = f.operating_cost * lp.slope;
  PieceConstants pc;
  pc.fixed = f.fixed_cost + f.operating_cost * lp.value -
             f.operating_cost * lp.slope * lp.tangent_point;
  const int n = instance.num_customers();
  pc.q.resize(n);
  pc.r.resize(n);
  for (int j = 0; j < n; ++j) {
    const double lambda = instance.customer(j).demand_rate;
    pc.q[j] = f.serving_cost * lambda +
              instance.access_cost(facility, j) * lambda + unit_cost * lambda;
    pc.r[j] = 4.0 * f.waiting_cost * unit_cost * lambda;
  }
  return pc;
}

InnerSolution SolveInner(std::span<const double> q, std::span<const double> r,
                         std::span<const double> u, InnerStats* stats,
                         SubproblemWorkspace* workspace) {
  if (q.size() != r.size() || q.size() != u.size()) {
    throw std::invalid_argument("q, r and u must have equal length");
  }
  SubproblemWorkspace local;
  SubproblemWorkspace& ws = workspace != nullptr ? *workspace : local;
  const PrefixChoice choice = ScanPrefixes(q, r, u, stats, ws);
  return InnerSolution{choice.value, Selection(ws, choice.prefix)};
}

double OptimalCapacity(double arrival_rate, double waiting_cost,
                       double unit_cost) {
  return arrival_rate + std::sqrt(waiting_cost * arrival_rate / unit_cost);
}

SubproblemResult SolveFacility(const Instance& instance,
                               const Linearization& lin, int facility,
                               std::span<const double> multipliers,
                               SubproblemWorkspace* workspace) {
  SubproblemWorkspace local;
  SubproblemWorkspace& ws = workspace != nullptr ? *workspace : local;
  const Facility& f = instance.facility(facility);
  const int n = instance.num_customers();
  const std::span<const double> access = instance.access_row(facility);
  ws.q.resize(n);
  ws.r.resize(n);

  SubproblemResult result;
  result.facility = facility;
  result.objective = std::numeric_limits<double>::infinity();
  for (int k = 0; k < lin.size(); ++k) {
    const LinearPiece& lp = lin.piece(k);
    const double unit_cost = f.operating_cost * lp.slope;
    const double fixed = f.fixed_cost + f.operating_cost * lp.value -
                         f.operating_cost * lp.slope * lp.tangent_point;
    for (int j = 0; j < n; ++j) {
      const double lambda = instance.customer(j).demand_rate;
      ws.q[j] = (f.serving_cost + access[j] + unit_cost) * lambda;
      ws.r[j] = 4.0 * f.waiting_cost * unit_cost * lambda;
    }
    const PrefixChoice choice = ScanPrefixes(ws.q, ws.r, multipliers, nullptr, ws);
    const double z = fixed + choice.value;
    if (z < result.objective) {
      result.objective = z;
      result.piece = k;
      result.selected = Selection(ws, choice.prefix);
    }
  }

  result.open = result.objective < 0;
  if (!result.open) {
    result.selected.clear();
    return result;
  }
  for (int j : result.selected) {
    result.arrival_rate += instance.customer(j).demand_rate;
  }
  result.capacity =
      OptimalCapacity(result.arrival_rate, f.waiting_cost,
                      f.operating_cost * lin.piece(result.piece).slope);
  return result;
}

double PieceObjective(const Instance& instance, const Linearization& lin,
                      int facility, int piece, std::span<const int> selected,
                      double capacity, std::span<const double> multipliers) {
  const Facility& f = instance.facility(facility);
  const LinearPiece& lp = lin.piece(piece);
  double arrival = 0.0;
  double linear_terms = 0.0;
  for (int j : selected) {
    const double lambda = instance.customer(j).demand_rate;
    arrival += lambda;
    linear_terms += f.serving_cost * lambda +
                    instance.access_cost(facility, j) * lambda - multipliers[j];
  }
  const double opening = f.fixed_cost + f.operating_cost * lp.value -
                         f.operating_cost * lp.tangent_point * lp.slope +
                         f.operating_cost * lp.slope * capacity;
  const double waiting =
      arrival > 0 ? f.waiting_cost * arrival / (capacity - arrival) : 0.0;
  return opening + linear_terms + waiting;
}

std::pair<int, double> BestPieceForRate(const Instance& instance,
                                        const Linearization& lin, int facility,
                                        double arrival_rate) {
  const Facility& f = instance.facility(facility);
  int best_piece = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k < lin.size(); ++k) {
    const LinearPiece& lp = lin.piece(k);
    const double unit_cost = f.operating_cost * lp.slope;
    const double cost = f.operating_cost * lp.intercept + unit_cost * arrival_rate +
                        2.0 * std::sqrt(f.waiting_cost * unit_cost * arrival_rate);
    if (cost < best_cost) {
      best_cost = cost;
      best_piece = k;
    }
  }
  const double unit_cost = f.operating_cost * lin.piece(best_piece).slope;
  return {best_piece, OptimalCapacity(arrival_rate, f.waiting_cost, unit_cost)};
}

std::pair<int, double> BestPieceCapacity(const Instance& instance,
                                         const Linearization& lin, int facility,
                                         std::span<const int> customers) {
  double arrival = 0.0;
  for (int j : customers) arrival += instance.customer(j).demand_rate;
  return BestPieceForRate(instance, lin, facility, arrival);
}

}  // namespace eosssd
