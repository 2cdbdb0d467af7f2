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

#ifndef ROBCTL_DP_H_
#define ROBCTL_DP_H_

#include <vector>

#include "robctl/instance.h"
#include "robctl/pwa.h"

namespace robctl {

struct DpStage {
  PwaConvex g;      // y -> max over w of h(y + w) + J_{k+1}(y + w)
  PwaConvex J;      // optimal cost-to-go at stage k
  double y_low;     // minimizer interval of c y + g(y)
  double y_up;
  double lower_threshold;  // y_low - U: below it u* = U
  double upper_threshold;  // y_up - L: above it u* = L
};

struct DpSolution {
  std::vector<DpStage> stages;  // stages[k - 1] for stage k
  double value = 0.0;           // J_1(x1)

  // J_{k}, with J_{T+1} the zero function.
  PwaConvex cost_to_go(int k) const;
};

// Backward Bellman recursion on a normalized (unit-dynamics) instance.
DpSolution solve_dp(const Instance& instance);

// Optimal control u_k*(x) with the y_low tie-break.
double policy_eval(const DpSolution& sol, const Instance& instance, int k,
                   double x);

// clamp(y - x, L, U) for a chosen minimizer y.
double saturated_control(double y, double x, double lower, double upper);

}  // namespace robctl

#endif  // ROBCTL_DP_H_
