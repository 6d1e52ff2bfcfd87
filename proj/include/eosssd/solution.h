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

#ifndef EOSSSD_SOLUTION_H_
#define EOSSSD_SOLUTION_H_

#include <array>
#include <vector>

namespace eosssd {

class Instance;

// Four terms of the system cost, all per unit time.
struct CostBreakdown {
  double opening = 0.0;
  double serving = 0.0;
  double access = 0.0;
  double waiting = 0.0;
  double total = 0.0;

  // Percent of total for opening, serving, access, waiting.
  std::array<double, 4> Shares() const;
};

inline constexpr int kUnassigned = -1;

// A design: which facilities are open, who serves each customer, and the
// service rate of every facility. Closed facilities carry capacity 0.
struct Solution {
  std::vector<bool> open;
  std::vector<int> assignment;
  std::vector<double> capacity;
  CostBreakdown cost;

  static Solution Empty(const Instance& instance);

  // Sum of demand routed to facility i.
  double ArrivalRate(const Instance& instance, int i) const;
  int NumOpen() const;
  // Mean capacity over open facilities; 0 when none is open.
  double AverageCapacity() const;
};

}  // namespace eosssd

#endif  // EOSSSD_SOLUTION_H_
