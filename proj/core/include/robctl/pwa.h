// Copyright 2026 The robctl Authors
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

#ifndef ROBCTL_PWA_H_
#define ROBCTL_PWA_H_

#include <utility>
#include <vector>

namespace robctl {

// Two slopes closer than this are considered equal.
inline constexpr double kSlopeTol = 1e-9;
// A piece whose value exceeds the envelope of its neighbours by less than
// this (relative) amount at their crossing is redundant.
inline constexpr double kDominanceTol = 1e-9;

struct AffinePiece {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double x) const { return slope * x + intercept; }
  bool operator==(const AffinePiece&) const = default;
};

// Convex piecewise-affine function of one variable, stored as the pointwise
// maximum of affine pieces. Instances are always canonical: slopes strictly
// increasing and every piece is the maximum on an interval of positive
// length.
class PwaConvex {
 public:
  // The zero function.
  PwaConvex();

  // Throws Error(kInvalidInput) on an empty list or non-finite data.
  static PwaConvex canonicalize(std::vector<AffinePiece> pieces);
  static PwaConvex affine(double slope, double intercept);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  int size() const { return static_cast<int>(pieces_.size()); }

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  // breakpoints()[i] is where piece i hands over to piece i + 1.
  std::vector<double> breakpoints() const;
  double min_slope() const { return pieces_.front().slope; }
  double max_slope() const { return pieces_.back().slope; }
  bool is_coercive() const;

  // One-sided derivatives at x.
  std::pair<double, double> subdifferential(double x) const;

  // x -> f(x + d).
  PwaConvex shift(double d) const;
  // x -> f(s * x), s > 0.
  PwaConvex scale_argument(double s) const;
  // x -> s * f(x), s >= 0.
  PwaConvex scale_value(double s) const;
  // x -> f(x) + slope * x + intercept.
  PwaConvex add_affine(double slope, double intercept) const;

  bool operator==(const PwaConvex&) const = default;

 private:
  explicit PwaConvex(std::vector<AffinePiece> canonical)
      : pieces_(std::move(canonical)) {}

  std::vector<AffinePiece> pieces_;
};

PwaConvex max_of(const PwaConvex& f, const PwaConvex& g);
PwaConvex add(const PwaConvex& f, const PwaConvex& g);

struct MinimizerInterval {
  double low;
  double up;
};

// Minimizer set of a coercive f. Throws Error(kInvalidInput)
// "unbounded minimizer set" otherwise.
MinimizerInterval argmin_interval(const PwaConvex& f);

struct PartialMin {
  PwaConvex value;  // x -> min_{u in [L, U]} c * u + f(x + u)
  double y_low;     // minimizer interval of c * y + f(y)
  double y_up;
};

// L and U may be infinite. When c * y + f(y) is monotone the minimizer
// interval is reported with an infinite endpoint, which is fine as long
// as the control bound on that side is finite.
PartialMin partial_min_box(const PwaConvex& f, double c, double lower,
                           double upper);

}  // namespace robctl

#endif  // ROBCTL_PWA_H_
