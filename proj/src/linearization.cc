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

#include "eosssd/linearization.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace eosssd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// A closed-form step is accepted when its generator equation holds to this
// relative residual.
constexpr double kClosedFormResidual = 1e-10;
// Bracket expansion gives up once the search point is this many times the
// starting point; the root is then treated as nonexistent.
constexpr double kMaxBracketRatio = 1e15;
constexpr int kMaxPieces = 1'000'000;

// Smallest x in [lo, hi] at which an increasing-through-zero function changes
// sign, to full double precision. f(lo) < 0 <= f(hi) on entry.
template <typename F>
double Bisect(F f, double lo, double hi) {
  for (int iter = 0; iter < 4096; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double value = f(mid);
    if (std::isnan(value)) throw LinearizationError("root finder hit NaN");
    if (value < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

// Doubles the gap to `start` until f turns non-negative, then bisects. Returns
// +infinity if f stays negative up to the expansion limit.
template <typename F>
double ExpandAndBisect(F f, double start) {
  double lo = start;
  double step = std::max(start, 1e-8);
  double hi = start + step;
  while (true) {
    const double value = f(hi);
    if (std::isnan(value)) throw LinearizationError("root finder hit NaN");
    if (value >= 0) break;
    lo = hi;
    step *= 2.0;
    hi = start + step;
    if (hi > kMaxBracketRatio * std::max(start, 1.0)) return kInf;
  }
  return Bisect(f, lo, hi);
}

LinearPiece MakePiece(const CostFunction& fn, double tangent_point) {
  LinearPiece piece;
  piece.tangent_point = tangent_point;
  piece.value = fn.Value(tangent_point);
  piece.slope = fn.Derivative(tangent_point);
  piece.intercept = piece.value - piece.slope * tangent_point;
  return piece;
}

bool HasClosedForm(CostFamily family) {
  return family == CostFamily::kSquareRoot || family == CostFamily::kFractional;
}

}  // namespace

double SquareRootTangentPoint(double breakpoint, double epsilon) {
  const double root = (1.0 + epsilon) * std::sqrt(breakpoint) +
                      std::sqrt((epsilon * epsilon + 2.0 * epsilon) * breakpoint);
  return root * root;
}

double SquareRootNextBreakpoint(double tangent_point, double epsilon) {
  const double root =
      (1.0 + epsilon) * std::sqrt(tangent_point) +
      std::sqrt((epsilon * epsilon + 2.0 * epsilon) * tangent_point);
  return root * root;
}

double FractionalTangentPoint(double breakpoint, double epsilon) {
  const double denominator = 1.0 - epsilon * breakpoint;
  if (!(denominator > 0)) return kInf;
  return ((1.0 + breakpoint) * std::sqrt(epsilon * breakpoint) +
          (1.0 + epsilon) * breakpoint) /
         denominator;
}

double FractionalNextBreakpoint(double tangent_point, double epsilon) {
  const double shifted = 1.0 + tangent_point;
  return 0.5 * (2.0 * tangent_point + epsilon * shifted * shifted +
                shifted * std::sqrt(epsilon * epsilon * shifted * shifted +
                                    4.0 * epsilon * tangent_point));
}

double NumericTangentPoint(const CostFunction& fn, double breakpoint,
                           double epsilon) {
  const double target = (1.0 + epsilon) * fn.Value(breakpoint);
  auto residual = [&](double mu) {
    return fn.Value(mu) + fn.Derivative(mu) * (breakpoint - mu) - target;
  };
  return ExpandAndBisect(residual, breakpoint);
}

double NumericNextBreakpoint(const CostFunction& fn, double tangent_point,
                             double epsilon) {
  const double value = fn.Value(tangent_point);
  const double slope = fn.Derivative(tangent_point);
  auto residual = [&](double mu) {
    return value + slope * (mu - tangent_point) - (1.0 + epsilon) * fn.Value(mu);
  };
  return ExpandAndBisect(residual, tangent_point);
}

double TangentResidual(const CostFunction& fn, double breakpoint,
                       double tangent_point, double epsilon) {
  const double target = (1.0 + epsilon) * fn.Value(breakpoint);
  const double line = fn.Value(tangent_point) +
                      fn.Derivative(tangent_point) * (breakpoint - tangent_point);
  return (line - target) / target;
}

double BreakpointResidual(const CostFunction& fn, double tangent_point,
                          double breakpoint, double epsilon) {
  const double target = (1.0 + epsilon) * fn.Value(breakpoint);
  const double line = fn.Value(tangent_point) +
                      fn.Derivative(tangent_point) * (breakpoint - tangent_point);
  return (line - target) / target;
}

double Linearization::Evaluate(double mu) const {
  double best = kInf;
  for (const LinearPiece& p : pieces_) {
    best = std::min(best, p.value + p.slope * (mu - p.tangent_point));
  }
  return best;
}

Linearization Linearize(const CostFunction& fn, double epsilon, double lower,
                        double upper, LinearizeMethod method) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(lower > 0) || !(upper > lower) || !std::isfinite(upper)) {
    throw std::invalid_argument(
        fmt::format("need 0 < lower < upper, got [{}, {}]", lower, upper));
  }
  const CostFamily family = fn.family();
  if (method == LinearizeMethod::kClosedForm && family != CostFamily::kLinear &&
      !HasClosedForm(family)) {
    throw std::invalid_argument(
        fmt::format("no closed form for the {} family", FamilyName(family)));
  }

  Linearization lin;
  lin.epsilon_ = epsilon;
  lin.lower_ = lower;
  lin.upper_ = upper;
  lin.family_ = family;

  if (family == CostFamily::kLinear) {
    lin.pieces_.push_back(MakePiece(fn, lower));
    lin.breakpoints_ = {lower, kInf};
    return lin;
  }

  const bool closed_form =
      method != LinearizeMethod::kNumeric && HasClosedForm(family);
  auto tangent_point = [&](double b) {
    if (!closed_form) return NumericTangentPoint(fn, b, epsilon);
    const double mu = family == CostFamily::kSquareRoot
                          ? SquareRootTangentPoint(b, epsilon)
                          : FractionalTangentPoint(b, epsilon);
    if (std::isfinite(mu) &&
        !(std::abs(TangentResidual(fn, b, mu, epsilon)) <= kClosedFormResidual)) {
      if (method == LinearizeMethod::kClosedForm) {
        throw LinearizationError(fmt::format(
            "closed-form tangent point fails its equation at b = {}", b));
      }
      lin.numeric_fallback_ = true;
      return NumericTangentPoint(fn, b, epsilon);
    }
    return mu;
  };
  auto next_breakpoint = [&](double mu) {
    if (!closed_form) return NumericNextBreakpoint(fn, mu, epsilon);
    const double b = family == CostFamily::kSquareRoot
                         ? SquareRootNextBreakpoint(mu, epsilon)
                         : FractionalNextBreakpoint(mu, epsilon);
    if (std::isfinite(b) &&
        !(std::abs(BreakpointResidual(fn, mu, b, epsilon)) <= kClosedFormResidual)) {
      if (method == LinearizeMethod::kClosedForm) {
        throw LinearizationError(fmt::format(
            "closed-form breakpoint fails its equation at mu = {}", mu));
      }
      lin.numeric_fallback_ = true;
      return NumericNextBreakpoint(fn, mu, epsilon);
    }
    return b;
  };

  double breakpoint = lower;
  lin.breakpoints_.push_back(breakpoint);
  while (true) {
    double mu = tangent_point(breakpoint);
    if (!std::isfinite(mu)) {
      mu = upper;
      lin.terminal_piece_ = true;
    }
    LinearPiece piece = MakePiece(fn, mu);
    if (!lin.pieces_.empty() && !(piece.slope < lin.pieces_.back().slope)) {
      throw LinearizationError(fmt::format(
          "slopes stopped decreasing at piece {} (mu = {})", lin.pieces_.size(), mu));
    }
    lin.pieces_.push_back(piece);
    // Past a terminal piece at upper, this lands beyond upper and ends the loop.
    breakpoint = next_breakpoint(mu);
    lin.breakpoints_.push_back(breakpoint);
    if (!(breakpoint <= upper)) break;
    if (static_cast<int>(lin.pieces_.size()) >= kMaxPieces) {
      throw LinearizationError("too many pieces; epsilon is too small");
    }
  }
  return lin;
}

}  // namespace eosssd
