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

#include "eosssd/cost_function.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace eosssd {

std::string_view FamilyName(CostFamily family) {
  switch (family) {
    case CostFamily::kLinear:
      return "linear";
    case CostFamily::kSquareRoot:
      return "sqrt";
    case CostFamily::kFractional:
      return "fractional";
    case CostFamily::kCustom:
      return "custom";
  }
  return "unknown";
}

std::optional<CostFamily> ParseFamily(std::string_view name) {
  if (name == "linear") return CostFamily::kLinear;
  if (name == "sqrt" || name == "square_root") return CostFamily::kSquareRoot;
  if (name == "fractional") return CostFamily::kFractional;
  if (name == "custom") return CostFamily::kCustom;
  return std::nullopt;
}

double DefaultOperatingCost(CostFamily family) {
  switch (family) {
    case CostFamily::kLinear:
      return 1.0;
    case CostFamily::kSquareRoot:
      return 10.0;
    case CostFamily::kFractional:
      return 100.0;
    case CostFamily::kCustom:
      break;
  }
  return 1.0;
}

CostFunction::CostFunction(CostFamily family, std::string name, Fn value,
                           Fn derivative)
    : family_(family),
      name_(std::move(name)),
      value_(std::move(value)),
      derivative_(std::move(derivative)) {}

CostFunction CostFunction::Linear() {
  return CostFunction(CostFamily::kLinear, "linear");
}

CostFunction CostFunction::SquareRoot() {
  return CostFunction(CostFamily::kSquareRoot, "sqrt");
}

CostFunction CostFunction::Fractional() {
  return CostFunction(CostFamily::kFractional, "fractional");
}

CostFunction CostFunction::Of(CostFamily family) {
  switch (family) {
    case CostFamily::kLinear:
      return Linear();
    case CostFamily::kSquareRoot:
      return SquareRoot();
    case CostFamily::kFractional:
      return Fractional();
    case CostFamily::kCustom:
      break;
  }
  throw std::invalid_argument("custom cost functions need explicit oracles");
}

CostFunction CostFunction::Custom(std::string name, Fn value, Fn derivative) {
  if (!value || !derivative) {
    throw std::invalid_argument("custom cost function needs value and derivative");
  }
  return CostFunction(CostFamily::kCustom, std::move(name), std::move(value),
                      std::move(derivative));
}

double CostFunction::Value(double mu) const {
  if (!(mu >= 0.0)) throw std::domain_error("capacity must be non-negative");
  switch (family_) {
    case CostFamily::kLinear:
      return mu;
    case CostFamily::kSquareRoot:
      return std::sqrt(mu);
    case CostFamily::kFractional:
      return mu / (mu + 1.0);
    case CostFamily::kCustom:
      return value_(mu);
  }
  return 0.0;
}

double CostFunction::Derivative(double mu) const {
  if (!(mu >= 0.0)) throw std::domain_error("capacity must be non-negative");
  switch (family_) {
    case CostFamily::kLinear:
      return 1.0;
    case CostFamily::kSquareRoot:
      if (mu == 0.0) {
        throw std::domain_error("square-root derivative is unbounded at 0");
      }
      return 0.5 / std::sqrt(mu);
    case CostFamily::kFractional:
      return 1.0 / ((mu + 1.0) * (mu + 1.0));
    case CostFamily::kCustom: {
      const double d = derivative_(mu);
      if (!(d > 0.0)) {
        throw std::domain_error("cost function derivative must be positive");
      }
      return d;
    }
  }
  return 0.0;
}

}  // namespace eosssd
