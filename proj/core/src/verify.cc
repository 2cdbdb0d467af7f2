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

#include "robctl/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "robctl/error.h"

namespace robctl {
namespace {

void check_horizon(int T) {
  if (T > kMaxEnumerationHorizon) {
    throw Error(ErrorKind::kCapability,
                "vertex enumeration needs horizon <= " +
                    std::to_string(kMaxEnumerationHorizon) + " (got " +
                    std::to_string(T) + ")");
  }
}

// Cube vertex number v, first coordinate most significant.
std::vector<double> vertex_of(long v, int m) {
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) w[i] = static_cast<double>((v >> (m - 1 - i)) & 1L);
  return w;
}

std::vector<int> as_bits(const std::vector<double>& w) {
  std::vector<int> out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = static_cast<int>(w[i]);
  return out;
}

}  // namespace

WorstCase worst_case_eval(const PolicyBundle& bundle, const Instance& inst,
                          CostMode mode) {
  const int T = inst.horizon();
  check_horizon(T);
  if (!inst.has_unit_dynamics()) {
    throw Error(ErrorKind::kInvalidInput, "worst_case_eval needs a normalized instance");
  }
  if (static_cast<int>(bundle.q.size()) != T ||
      static_cast<int>(bundle.z.size()) != T) {
    throw Error(ErrorKind::kInvalidInput, "bundle horizon mismatch");
  }
  WorstCase best{-std::numeric_limits<double>::infinity(), {}};
  for (long v = 0; v < (1L << T); ++v) {
    const std::vector<double> omega = vertex_of(v, T);
    double x = inst.x1;
    double total = 0.0;
    for (int k = 1; k <= T; ++k) {
      const Stage& s = inst.stages[k - 1];
      const double u = bundle.q[k - 1].eval(omega);
      const double w = omega[k - 1] == 0.0 ? s.w_low : s.w_up;
      x = x + u + w;
      total += s.c * u;
      total += mode == CostMode::kConvex ? s.h.eval(x)
                                         : bundle.z[k - 1].eval(omega);
    }
    if (total > best.value) best = {total, as_bits(omega)};
  }
  return best;
}

WorstCase worst_case_policy(const Instance& inst,
                            const std::function<double(int, double)>& policy) {
  const int T = inst.horizon();
  check_horizon(T);
  WorstCase best{-std::numeric_limits<double>::infinity(), {}};
  for (long v = 0; v < (1L << T); ++v) {
    const std::vector<double> omega = vertex_of(v, T);
    double x = inst.x1;
    double total = 0.0;
    for (int k = 1; k <= T; ++k) {
      const Stage& s = inst.stages[k - 1];
      const double u = policy(k, x);
      x = s.alpha * x + s.beta * u +
          s.gamma * (omega[k - 1] == 0.0 ? s.w_low : s.w_up);
      total += s.c * u + s.h.eval(x);
    }
    if (total > best.value) best = {total, as_bits(omega)};
  }
  return best;
}

bool check_affine_range(const AffineExpr& e, double lo, double hi) {
  return e.min_over_box() >= lo - kCheckSlack &&
         e.max_over_box() <= hi + kCheckSlack;
}

DominationCheck check_domination(const AffineExpr& z, const PwaConvex& h,
                                 const AffineExpr& state) {
  if (z.order() != state.order()) {
    throw Error(ErrorKind::kInvalidInput, "check_domination: order mismatch");
  }
  const int m = z.order();
  check_horizon(m);
  DominationCheck out;
  out.gap = std::numeric_limits<double>::infinity();
  for (long v = 0; v < (1L << m); ++v) {
    const std::vector<double> w = vertex_of(v, m);
    const double hv = h.eval(state.eval(w));
    const double gap = z.eval(w) - hv;
    if (gap < -kCheckSlack * (1.0 + std::abs(hv))) {
      return {false, w, gap};
    }
    out.gap = std::min(out.gap, gap);
  }
  return out;
}

}  // namespace robctl
