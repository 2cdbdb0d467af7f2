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

#include "robctl/affine.h"

#include <algorithm>
#include <cstdio>

namespace robctl {

double AffineExpr::eval(std::span<const double> w) const {
  double v = constant;
  const size_t n = std::min(w.size(), coeffs.size());
  for (size_t i = 0; i < n; ++i) v += coeffs[i] * w[i];
  return v;
}

AffineExpr AffineExpr::extended(int m) const {
  AffineExpr out = *this;
  if (m > order()) out.coeffs.resize(m, 0.0);
  return out;
}

double AffineExpr::min_over_box() const {
  double v = constant;
  for (double c : coeffs) v += std::min(c, 0.0);
  return v;
}

double AffineExpr::max_over_box() const {
  double v = constant;
  for (double c : coeffs) v += std::max(c, 0.0);
  return v;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  constant += o.constant;
  if (o.order() > order()) coeffs.resize(o.order(), 0.0);
  for (int i = 0; i < o.order(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) {
  constant -= o.constant;
  if (o.order() > order()) coeffs.resize(o.order(), 0.0);
  for (int i = 0; i < o.order(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

AffineExpr& AffineExpr::operator*=(double s) {
  constant *= s;
  for (double& c : coeffs) c *= s;
  return *this;
}

std::string AffineExpr::to_string() const {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", constant);
  out += buf;
  for (int i = 0; i < order(); ++i) {
    std::snprintf(buf, sizeof(buf), " %+.10g*w%d", coeffs[i], i + 1);
    out += buf;
  }
  return out;
}

AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
AffineExpr operator*(double s, AffineExpr a) { return a *= s; }

}  // namespace robctl
