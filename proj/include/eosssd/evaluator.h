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

#ifndef EOSSSD_EVALUATOR_H_
#define EOSSSD_EVALUATOR_H_

#include <stdexcept>

#include "eosssd/instance.h"
#include "eosssd/linearization.h"
#include "eosssd/solution.h"

namespace eosssd {

// Arrival rate at or above the service rate: the M/M/1 queue has no steady
// state.
class SteadyStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A design that breaks one of the assignment/opening constraints.
class InfeasibleSolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Expected time a customer spends at an M/M/1 facility, 1 / (mu - Lambda).
// Throws SteadyStateError unless mu > Lambda >= 0.
double Mm1Wait(double capacity, double arrival_rate);

// Throws InfeasibleSolutionError or SteadyStateError naming the first
// violated constraint.
void CheckFeasible(const Instance& instance, const Solution& solution);

// Cost of a feasible design under the exact opening cost f + c g(mu).
CostBreakdown Evaluate(const Instance& instance, const Solution& solution);

// Same, with g replaced by its piecewise-linear envelope.
CostBreakdown Evaluate(const Instance& instance, const Solution& solution,
                       const Linearization& lin);

}  // namespace eosssd

#endif  // EOSSSD_EVALUATOR_H_
