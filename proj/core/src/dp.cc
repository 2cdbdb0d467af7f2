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

#include "robctl/dp.h"

#include <algorithm>
#include <cmath>

#include "robctl/error.h"

namespace robctl {

PwaConvex DpSolution::cost_to_go(int k) const {
  if (k == static_cast<int>(stages.size()) + 1) return PwaConvex();
  return stages[k - 1].J;
}

double saturated_control(double y, double x, double lower, double upper) {
  // y may be infinite when c y + g(y) is monotone.
  const double u = y - x;
  if (std::isnan(u)) return lower;
  return std::clamp(u, lower, upper);
}

DpSolution solve_dp(const Instance& instance) {
  validate(instance);
  if (!instance.has_unit_dynamics()) {
    throw Error(ErrorKind::kInvalidInput,
                "solve_dp needs unit dynamics; call normalize() first");
  }
  const int T = instance.horizon();
  DpSolution sol;
  sol.stages.resize(T);
  PwaConvex next;  // J_{T+1} = 0
  for (int k = T - 1; k >= 0; --k) {
    const Stage& s = instance.stages[k];
    const PwaConvex stage_total = add(s.h, next);
    const PwaConvex g = s.w_low == s.w_up
                            ? stage_total.shift(s.w_low)
                            : max_of(stage_total.shift(s.w_low),
                                     stage_total.shift(s.w_up));
    const PartialMin pm = partial_min_box(g, s.c, s.L, s.U);
    DpStage& out = sol.stages[k];
    out.g = g;
    out.J = pm.value;
    out.y_low = pm.y_low;
    out.y_up = pm.y_up;
    out.lower_threshold = pm.y_low - s.U;
    out.upper_threshold = pm.y_up - s.L;
    next = pm.value;
  }
  sol.value = sol.stages[0].J.eval(instance.x1);
  return sol;
}

double policy_eval(const DpSolution& sol, const Instance& instance, int k,
                   double x) {
  if (k < 1 || k > static_cast<int>(sol.stages.size())) {
    throw Error(ErrorKind::kInvalidInput, "policy_eval: stage out of range");
  }
  const Stage& s = instance.stages[k - 1];
  return saturated_control(sol.stages[k - 1].y_low, x, s.L, s.U);
}

}  // namespace robctl
