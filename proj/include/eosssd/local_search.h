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

// Descent on the repaired design, costed with the exact opening cost at the
// capacity chosen by BestPieceForRate. Two moves, applied until neither helps:
//   - relocate one customer to the facility giving the largest saving;
//   - close one open facility, sending each of its customers greedily to the
//     cheapest remaining open facility.

#ifndef EOSSSD_LOCAL_SEARCH_H_
#define EOSSSD_LOCAL_SEARCH_H_

#include "eosssd/instance.h"
#include "eosssd/linearization.h"
#include "eosssd/solution.h"

namespace eosssd {

struct LocalSearchStats {
  int passes = 0;
  int relocations = 0;
  int closures = 0;
};

// Returns a feasible design costing no more than `start` (exact evaluation).
Solution ImproveLocally(const Instance& instance, const Linearization& lin,
                        const Solution& start, int max_passes = 100,
                        LocalSearchStats* stats = nullptr);

// Exact cost of facility i serving arrival rate L whose serving plus access
// cost is `linear_cost`; 0 when L == 0 and `members` == 0.
double FacilityExactCost(const Instance& instance, const Linearization& lin,
                         int facility, int members, double arrival_rate,
                         double linear_cost);

}  // namespace eosssd

#endif  // EOSSSD_LOCAL_SEARCH_H_
