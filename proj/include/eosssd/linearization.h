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

// Outer piecewise-linear approximation of a concave cost function g by the
// lower envelope of tangent lines,
//
//   g_hat(mu) = min_k [ g(mu_k) + g'(mu_k) (mu - mu_k) ],
//
// with tangent points mu_k and breakpoints b_k chosen so that
// 0 <= (g_hat - g) / g <= epsilon on [lower, upper]. Starting from b_0 = lower
// the generator alternates two scalar equations:
//
//   tangent:    (1 + eps) g(b_{k-1}) = g(mu_k) + g'(mu_k) (b_{k-1} - mu_k),  mu_k > b_{k-1}
//   breakpoint: (1 + eps) g(b_k)     = g(mu_k) + g'(mu_k) (b_k - mu_k),      b_k > mu_k
//
// and stops as soon as b_k > upper. The square-root and fractional families
// have closed-form solutions of both equations; other families use bracketing
// bisection.
//
// When the tangent equation has no finite root (a bounded g such as the
// fractional family once eps * b_{k-1} >= 1), every tangent taken at or beyond
// b_{k-1} stays within eps on [b_{k-1}, mu]. The generator then places a
// terminal piece at mu = upper, which ends the sequence.

#ifndef EOSSSD_LINEARIZATION_H_
#define EOSSSD_LINEARIZATION_H_

#include <limits>
#include <stdexcept>
#include <vector>

#include "eosssd/cost_function.h"

namespace eosssd {

class LinearizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearPiece {
  double tangent_point = 0.0;  // mu_k
  double value = 0.0;          // g(mu_k)
  double slope = 0.0;          // g'(mu_k)
  double intercept = 0.0;      // g(mu_k) - mu_k g'(mu_k)

  double operator()(double mu) const { return intercept + slope * mu; }
};

enum class LinearizeMethod {
  kAuto,        // closed form where one exists, bisection otherwise
  kClosedForm,  // fails for families without a closed form
  kNumeric,     // bisection for every family
};

class Linearization {
 public:
  const std::vector<LinearPiece>& pieces() const { return pieces_; }
  // b_0 .. b_K; b_K may be +infinity when the last breakpoint equation has no
  // finite root.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  int size() const { return static_cast<int>(pieces_.size()); }
  const LinearPiece& piece(int k) const { return pieces_[k]; }
  double epsilon() const { return epsilon_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  CostFamily family() const { return family_; }

  // True if the last piece was placed by the no-root rule.
  bool has_terminal_piece() const { return terminal_piece_; }
  // True if a closed-form step failed its residual check and bisection was
  // used instead.
  bool used_numeric_fallback() const { return numeric_fallback_; }

  // Lower envelope of all pieces.
  double Evaluate(double mu) const;

 private:
  friend Linearization Linearize(const CostFunction&, double, double, double,
                                 LinearizeMethod);

  std::vector<LinearPiece> pieces_;
  std::vector<double> breakpoints_;
  double epsilon_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  CostFamily family_ = CostFamily::kLinear;
  bool terminal_piece_ = false;
  bool numeric_fallback_ = false;
};

// Throws std::invalid_argument on bad arguments and LinearizationError when
// the numeric path fails or the piece count explodes. The linear family
// always yields the single exact piece (slope 1, intercept 0).
Linearization Linearize(const CostFunction& fn, double epsilon, double lower,
                        double upper,
                        LinearizeMethod method = LinearizeMethod::kAuto);

// Closed-form solutions of the two generator equations. Return +infinity when
// there is no finite root.
double SquareRootTangentPoint(double breakpoint, double epsilon);
double SquareRootNextBreakpoint(double tangent_point, double epsilon);
double FractionalTangentPoint(double breakpoint, double epsilon);
double FractionalNextBreakpoint(double tangent_point, double epsilon);

// Bisection solutions of the same equations for any concave g.
double NumericTangentPoint(const CostFunction& fn, double breakpoint,
                           double epsilon);
double NumericNextBreakpoint(const CostFunction& fn, double tangent_point,
                             double epsilon);

// Relative residuals of the generator equations, scaled by (1 + eps) g(b).
double TangentResidual(const CostFunction& fn, double breakpoint,
                       double tangent_point, double epsilon);
double BreakpointResidual(const CostFunction& fn, double tangent_point,
                          double breakpoint, double epsilon);

}  // namespace eosssd

#endif  // EOSSSD_LINEARIZATION_H_
