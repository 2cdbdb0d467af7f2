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

#ifndef ROBCTL_INSTANCE_H_
#define ROBCTL_INSTANCE_H_

#include <optional>
#include <vector>

#include "robctl/pwa.h"

namespace robctl {

// One stage of x_{k+1} = alpha x_k + beta u_k + gamma w_k with running cost
// c u_k + h(x_{k+1}), u_k in [L, U], w_k in [w_low, w_up].
struct Stage {
  double c = 0.0;
  double L = 0.0;
  double U = 0.0;
  double w_low = 0.0;
  double w_up = 0.0;
  PwaConvex h;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  // Upper bound on u_1 + ... + u_k (raw units). Only the LP models use it.
  std::optional<double> cum_bound;

  bool operator==(const Stage&) const = default;
};

struct Instance {
  double x1 = 0.0;
  std::vector<Stage> stages;

  int horizon() const { return static_cast<int>(stages.size()); }
  bool has_unit_dynamics() const;
  bool has_cumulative_bounds() const;
  bool operator==(const Instance&) const = default;
};

// Throws Error(kInvalidInput) naming the offending stage and field.
void validate(const Instance& instance);

// Per-stage scalars of the change of variables x~_k = x_k / P_k with
// P_k = alpha_1 ... alpha_{k-1}.
struct StageTransform {
  double state_scale = 1.0;        // P_k
  double next_state_scale = 1.0;   // P_{k+1}
  double control_scale = 1.0;      // u = control_scale * u~
  double disturbance_scale = 1.0;  // w~ = disturbance_scale * w

  bool is_identity() const;
};

struct TransformRecord {
  std::vector<StageTransform> stages;

  bool is_identity() const;
  // Raw state x_k from the normalized one, k = 1..T+1.
  double state_to_raw(int k, double x_normalized) const;
  double control_to_raw(int k, double u_normalized) const;
};

struct NormalizedInstance {
  Instance instance;
  TransformRecord record;
};

// Rewrites an instance with general positive alpha, beta and nonzero gamma
// into unit dynamics. Disturbance intervals stay general (sorted after a
// sign flip); the unit-cube coordinates live in AffineExpr. The optimal
// value is unchanged. Cumulative bounds survive only an identity record.
NormalizedInstance normalize(const Instance& instance);

}  // namespace robctl

#endif  // ROBCTL_INSTANCE_H_
