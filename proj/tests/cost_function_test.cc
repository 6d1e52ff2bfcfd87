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

#include <gtest/gtest.h>

namespace eosssd {
namespace {

TEST(CostFunctionTest, Values) {
  EXPECT_DOUBLE_EQ(CostFunction::SquareRoot().Value(4.0), 2.0);
  EXPECT_DOUBLE_EQ(CostFunction::Fractional().Value(0.0), 0.0);
  EXPECT_DOUBLE_EQ(CostFunction::Linear().Value(318.0), 318.0);
}

TEST(CostFunctionTest, Derivatives) {
  EXPECT_DOUBLE_EQ(CostFunction::SquareRoot().Derivative(4.0), 0.25);
  EXPECT_DOUBLE_EQ(CostFunction::Fractional().Derivative(1.0), 0.25);
  EXPECT_DOUBLE_EQ(CostFunction::Linear().Derivative(7.0), 1.0);
}

TEST(CostFunctionTest, DerivativeMatchesCentralDifference) {
  for (CostFamily family :
       {CostFamily::kLinear, CostFamily::kSquareRoot, CostFamily::kFractional}) {
    const CostFunction g = CostFunction::Of(family);
    for (double mu : {0.5, 1.0, 3.7, 42.0, 1000.0}) {
      const double h = 1e-5 * mu;
      const double numeric = (g.Value(mu + h) - g.Value(mu - h)) / (2.0 * h);
      EXPECT_NEAR(g.Derivative(mu), numeric, 1e-7 * std::abs(numeric) + 1e-12)
          << FamilyName(family) << " at " << mu;
    }
  }
}

TEST(CostFunctionTest, ConcaveNonDecreasing) {
  for (CostFamily family : {CostFamily::kSquareRoot, CostFamily::kFractional}) {
    const CostFunction g = CostFunction::Of(family);
    double previous_value = g.Value(0.1);
    double previous_slope = g.Derivative(0.1);
    for (double mu = 0.2; mu < 500.0; mu *= 1.3) {
      EXPECT_GE(g.Value(mu), previous_value);
      EXPECT_LE(g.Derivative(mu), previous_slope);
      previous_value = g.Value(mu);
      previous_slope = g.Derivative(mu);
    }
  }
}

TEST(CostFunctionTest, DomainErrors) {
  EXPECT_THROW(CostFunction::Linear().Value(-1.0), std::domain_error);
  EXPECT_THROW(CostFunction::SquareRoot().Derivative(0.0), std::domain_error);
  EXPECT_THROW(CostFunction::Fractional().Derivative(-0.5), std::domain_error);
}

TEST(CostFunctionTest, CustomFamily) {
  const CostFunction g = CostFunction::Custom(
      "log1p", [](double mu) { return std::log1p(mu); },
      [](double mu) { return 1.0 / (1.0 + mu); });
  EXPECT_EQ(g.family(), CostFamily::kCustom);
  EXPECT_EQ(g.name(), "log1p");
  EXPECT_DOUBLE_EQ(g.Value(std::exp(1.0) - 1.0), 1.0);
  EXPECT_DOUBLE_EQ(g.Derivative(1.0), 0.5);
  const CostFunction flat = CostFunction::Custom(
      "flat", [](double) { return 1.0; }, [](double) { return 0.0; });
  EXPECT_THROW(flat.Derivative(1.0), std::domain_error);
}

TEST(CostFunctionTest, NamesAndDefaults) {
  EXPECT_EQ(ParseFamily("sqrt"), CostFamily::kSquareRoot);
  EXPECT_EQ(ParseFamily("square_root"), CostFamily::kSquareRoot);
  EXPECT_EQ(ParseFamily("fractional"), CostFamily::kFractional);
  EXPECT_EQ(ParseFamily("linear"), CostFamily::kLinear);
  EXPECT_FALSE(ParseFamily("cubic").has_value());
  EXPECT_EQ(FamilyName(CostFamily::kSquareRoot), "sqrt");
  EXPECT_EQ(DefaultOperatingCost(CostFamily::kLinear), 1.0);
  EXPECT_EQ(DefaultOperatingCost(CostFamily::kSquareRoot), 10.0);
  EXPECT_EQ(DefaultOperatingCost(CostFamily::kFractional), 100.0);
  EXPECT_THROW(CostFunction::Of(CostFamily::kCustom), std::invalid_argument);
}

}  // namespace
}  // namespace eosssd
