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

#include "robctl/instance.h"

#include <cmath>
#include <string>
#include <utility>

#include "robctl/error.h"

namespace robctl {
namespace {

[[noreturn]] void reject(int k, const std::string& what) {
  throw Error(ErrorKind::kInvalidInput,
              "stage " + std::to_string(k + 1) + ": " + what);
}

}  // namespace

bool Instance::has_unit_dynamics() const {
  for (const Stage& s : stages) {
    if (s.alpha != 1.0 || s.beta != 1.0 || s.gamma != 1.0) return false;
  }
  return true;
}

bool Instance::has_cumulative_bounds() const {
  for (const Stage& s : stages) {
    if (s.cum_bound) return true;
  }
  return false;
}

void validate(const Instance& instance) {
  if (instance.stages.empty()) {
    throw Error(ErrorKind::kInvalidInput, "horizon must be at least 1");
  }
  if (!std::isfinite(instance.x1)) {
    throw Error(ErrorKind::kInvalidInput, "x1 must be finite");
  }
  for (int k = 0; k < instance.horizon(); ++k) {
    const Stage& s = instance.stages[k];
    if (!std::isfinite(s.c) || s.c < 0.0) reject(k, "c must be finite and >= 0");
    if (std::isnan(s.L) || std::isnan(s.U) || s.L == INFINITY ||
        s.U == -INFINITY) {
      reject(k, "bad control bounds");
    }
    if (s.L > s.U) reject(k, "L > U");
    if (!std::isfinite(s.w_low) || !std::isfinite(s.w_up)) {
      reject(k, "disturbance bounds must be finite");
    }
    if (s.w_low > s.w_up) reject(k, "w_low > w_up");
    if (!s.h.is_coercive()) reject(k, "stage cost h is not coercive");
    if (!std::isfinite(s.alpha) || s.alpha <= 0.0) reject(k, "alpha must be > 0");
    if (!std::isfinite(s.beta) || s.beta <= 0.0) reject(k, "beta must be > 0");
    if (!std::isfinite(s.gamma) || s.gamma == 0.0) reject(k, "gamma must be nonzero");
    if (s.cum_bound && std::isnan(*s.cum_bound)) reject(k, "cum_bound is NaN");
  }
}

bool StageTransform::is_identity() const {
  return state_scale == 1.0 && next_state_scale == 1.0 &&
         control_scale == 1.0 && disturbance_scale == 1.0;
}

bool TransformRecord::is_identity() const {
  for (const StageTransform& t : stages) {
    if (!t.is_identity()) return false;
  }
  return true;
}

double TransformRecord::state_to_raw(int k, double x_normalized) const {
  const double p = k <= static_cast<int>(stages.size())
                       ? stages[k - 1].state_scale
                       : stages.back().next_state_scale;
  return p * x_normalized;
}

double TransformRecord::control_to_raw(int k, double u_normalized) const {
  return stages[k - 1].control_scale * u_normalized;
}

NormalizedInstance normalize(const Instance& instance) {
  validate(instance);
  NormalizedInstance out;
  out.instance.x1 = instance.x1;
  double p = 1.0;
  for (const Stage& s : instance.stages) {
    StageTransform t;
    t.state_scale = p;
    t.next_state_scale = p * s.alpha;
    t.control_scale = t.next_state_scale / s.beta;
    t.disturbance_scale = s.gamma / t.next_state_scale;
    p = t.next_state_scale;

    Stage n;
    // u~ = u / control_scale keeps c u = (c control_scale) u~.
    n.c = s.c * t.control_scale;
    n.L = s.L / t.control_scale;
    n.U = s.U / t.control_scale;
    double lo = s.w_low * t.disturbance_scale;
    double hi = s.w_up * t.disturbance_scale;
    if (lo > hi) std::swap(lo, hi);
    n.w_low = lo;
    n.w_up = hi;
    n.h = s.h.scale_argument(t.next_state_scale);
    n.cum_bound = s.cum_bound;
    out.instance.stages.push_back(std::move(n));
    out.record.stages.push_back(t);
  }
  if (!out.record.is_identity()) {
    for (Stage& s : out.instance.stages) s.cum_bound.reset();
  }
  return out;
}

}  // namespace robctl
