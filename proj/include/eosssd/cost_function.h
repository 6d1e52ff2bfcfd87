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

#ifndef EOSSSD_COST_FUNCTION_H_
#define EOSSSD_COST_FUNCTION_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace eosssd {

// Shape of the capacity-dependent part g(mu) of a facility opening cost
// h(mu) = f + c * g(mu). Every family is concave and non-decreasing.
enum class CostFamily {
  kLinear,      // g(mu) = mu
  kSquareRoot,  // g(mu) = sqrt(mu)
  kFractional,  // g(mu) = mu / (mu + 1)
  kCustom,      // user supplied value and derivative
};

// Canonical short names used in files and on the command line:
// "linear", "sqrt", "fractional", "custom".
std::string_view FamilyName(CostFamily family);

// Accepts the canonical names plus "square_root" as an alias for "sqrt".
std::optional<CostFamily> ParseFamily(std::string_view name);

// Operating cost c used for each family in the reference experiments.
double DefaultOperatingCost(CostFamily family);

// Value and first derivative of g. Immutable; cheap to copy for the built-in
// families.
class CostFunction {
 public:
  using Fn = std::function<double(double)>;

  static CostFunction Linear();
  static CostFunction SquareRoot();
  static CostFunction Fractional();
  static CostFunction Of(CostFamily family);
  // The caller guarantees concavity and monotonicity. A non-positive derivative
  // is reported as a domain error when it is evaluated.
  static CostFunction Custom(std::string name, Fn value, Fn derivative);

  CostFamily family() const { return family_; }
  const std::string& name() const { return name_; }

  // Throws std::domain_error for mu < 0.
  double Value(double mu) const;

  // Throws std::domain_error for mu < 0, for mu == 0 on the square-root family,
  // and when a custom derivative is not strictly positive.
  double Derivative(double mu) const;

 private:
  CostFunction(CostFamily family, std::string name, Fn value = {},
               Fn derivative = {});

  CostFamily family_;
  std::string name_;
  Fn value_;
  Fn derivative_;
};

}  // namespace eosssd

#endif  // EOSSSD_COST_FUNCTION_H_
