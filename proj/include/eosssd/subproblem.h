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

// Exact solver for the single-facility relaxed problem. For a fixed tangent
// piece k the capacity minimizing  c g'_k mu + w L / (mu - L)  is
//
//   mu* = L + sqrt(w L / (c g'_k)),
//
// and substituting it leaves the pure 0-1 problem
//
//   min_y  sum_j (q_j - u_j) y_j + sqrt(sum_j r_j y_j)
//
// with p = f + c (g(mu_k) - g'_k mu_k), q_j = (s + a_j + c g'_k) lambda_j and
// r_j = 4 w c g'_k lambda_j. Some optimal selection is a prefix of the
// customers with negative reduced cost sorted by (q_j - u_j) / r_j, so a sort
// followed by a prefix scan solves it in O(|J| log |J|).

#ifndef EOSSSD_SUBPROBLEM_H_
#define EOSSSD_SUBPROBLEM_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eosssd/instance.h"
#include "eosssd/linearization.h"

namespace eosssd {

struct PieceConstants {
  double fixed = 0.0;     // p
  std::vector<double> q;  // per customer
  std::vector<double> r;  // per customer
};

PieceConstants ComputePieceConstants(const Instance& instance,
                                     const Linearization& lin, int facility,
                                     int piece);

struct InnerSolution {
  double value = 0.0;
  std::vector<int> selected;  // ascending customer ids
};

// Optional instrumentation for complexity checks.
struct InnerStats {
  std::int64_t comparisons = 0;
};

// Scratch buffers reused across calls; one per thread.
struct SubproblemWorkspace {
  std::vector<std::pair<double, int>> order;
  std::vector<int> forced;
  std::vector<double> q;
  std::vector<double> r;
};

// Minimizes sum_j (q_j - u_j) y_j + sqrt(sum_j r_j y_j) over binary y. Requires
// r_j >= 0; customers with r_j == 0 and negative reduced cost are always
// taken. Ties: sort by (ratio, id), earliest minimizing prefix wins, so the
// empty selection is preferred over an equal-valued nonempty one.
InnerSolution SolveInner(std::span<const double> q, std::span<const double> r,
                         std::span<const double> u, InnerStats* stats = nullptr,
                         SubproblemWorkspace* workspace = nullptr);

struct SubproblemResult {
  int facility = 0;
  int piece = 0;            // k(i), smallest index among minimizers
  double objective = 0.0;   // z at k(i); contributes min(0, z) to the bound
  bool open = false;        // z < 0
  std::vector<int> selected;  // empty when closed
  double arrival_rate = 0.0;  // sum of selected demand
  double capacity = 0.0;      // mu*, 0 when closed
};

// Optimal capacity for arrival rate `arrival_rate` on a piece with marginal
// capacity cost `unit_cost` = c g'_k.
double OptimalCapacity(double arrival_rate, double waiting_cost,
                       double unit_cost);

SubproblemResult SolveFacility(const Instance& instance,
                               const Linearization& lin, int facility,
                               std::span<const double> multipliers,
                               SubproblemWorkspace* workspace = nullptr);

// Direct evaluation of the piece-k objective with the facility open,
//   p + c g'_k mu + sum_j (s + a_j) lambda_j y_j + w L / (mu - L) - sum_j u_j y_j,
// at an explicit (selection, capacity). Used to cross-check SolveFacility.
double PieceObjective(const Instance& instance, const Linearization& lin,
                      int facility, int piece, std::span<const int> selected,
                      double capacity, std::span<const double> multipliers);

// Piece and capacity minimizing the linearized cost of serving `customers`
// from `facility` (u = 0). Returns {piece, capacity}.
// Piece minimizing c*intercept + c*slope*L + 2 sqrt(w c slope L) at arrival
// rate L, with mu from the capacity closed form. Smallest index wins ties.
std::pair<int, double> BestPieceForRate(const Instance& instance,
                                        const Linearization& lin, int facility,
                                        double arrival_rate);

std::pair<int, double> BestPieceCapacity(const Instance& instance,
                                         const Linearization& lin, int facility,
                                         std::span<const int> customers);

}  // namespace eosssd

#endif  // EOSSSD_SUBPROBLEM_H_
