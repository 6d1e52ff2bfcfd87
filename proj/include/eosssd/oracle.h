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

// Brute-force optimum for desk-sized instances. Every map customer -> facility
// is enumerated; facilities that receive nobody stay closed. Capacities come
// from the tangent-piece closed form (linearized model) or from a global 1-D
// search (exact model).

#ifndef EOSSSD_ORACLE_H_
#define EOSSSD_ORACLE_H_

#include "eosssd/instance.h"
#include "eosssd/linearization.h"
#include "eosssd/solution.h"

namespace eosssd {

inline constexpr int kOracleMaxFacilities = 4;
inline constexpr int kOracleMaxCustomers = 8;

struct OracleResult {
  double value = 0.0;
  Solution solution;
};

struct CapacityChoice {
  double capacity = 0.0;
  double cost = 0.0;  // c g(mu) + w L / (mu - L)
};

// Global minimizer of c g(mu) + w L / (mu - L) on (L, upper]: a log-spaced grid
// of 10^4 offsets brackets every local minimum, each refined by golden-section
// search.
CapacityChoice MinimizeExactCapacity(const CostFunction& g, double operating_cost,
                                     double waiting_cost, double arrival_rate,
                                     double upper);

// Throws std::invalid_argument beyond kOracleMaxFacilities x
// kOracleMaxCustomers. With exact_g the capacity search runs up to
// 10 * lin.upper().
OracleResult OracleOptimum(const Instance& instance, const Linearization& lin,
                           bool exact_g);

}  // namespace eosssd

#endif  // EOSSSD_ORACLE_H_
