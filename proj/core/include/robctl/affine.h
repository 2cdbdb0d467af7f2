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

#ifndef ROBCTL_AFFINE_H_
#define ROBCTL_AFFINE_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace robctl {

// constant + sum_i coeffs[i] * w_{i+1}, with w on the unit hypercube
// [0,1]^order.
struct AffineExpr {
  double constant = 0.0;
  std::vector<double> coeffs;

  AffineExpr() = default;
  explicit AffineExpr(double c0, int order = 0)
      : constant(c0), coeffs(order, 0.0) {}
  AffineExpr(double c0, std::vector<double> c)
      : constant(c0), coeffs(std::move(c)) {}

  int order() const { return static_cast<int>(coeffs.size()); }
  // Coefficient of w_i, i >= 1; zero past the order.
  double coeff(int i) const {
    return i <= order() ? coeffs[i - 1] : 0.0;
  }
  double eval(std::span<const double> w) const;

  // Same function viewed as depending on the first m >= order() coordinates.
  AffineExpr extended(int m) const;
  double min_over_box() const;
  double max_over_box() const;

  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator-=(const AffineExpr& o);
  AffineExpr& operator*=(double s);
  AffineExpr& operator+=(double s) {
    constant += s;
    return *this;
  }
  bool operator==(const AffineExpr&) const = default;

  std::string to_string() const;
};

AffineExpr operator+(AffineExpr a, const AffineExpr& b);
AffineExpr operator-(AffineExpr a, const AffineExpr& b);
AffineExpr operator*(double s, AffineExpr a);

}  // namespace robctl

#endif  // ROBCTL_AFFINE_H_
