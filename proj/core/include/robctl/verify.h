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

#ifndef ROBCTL_VERIFY_H_
#define ROBCTL_VERIFY_H_

#include <functional>
#include <vector>

#include "robctl/affine.h"
#include "robctl/construct.h"
#include "robctl/instance.h"
#include "robctl/pwa.h"

namespace robctl {

inline constexpr int kMaxEnumerationHorizon = 16;
inline constexpr double kCheckSlack = 1e-9;

enum class CostMode {
  kConvex,  // sum of c q + h(x)
  kAffine,  // sum of c q + z
};

struct WorstCase {
  double value;
  std::vector<int> vertex;  // 0 = low end, 1 = up end, per stage
};

// Exact worst-case total cost of a bundle over the disturbance-box
// vertices of a normalized instance. Vertices run lexicographically, first
// stage most significant, low before up; the first maximizer is returned.
WorstCase worst_case_eval(const PolicyBundle& bundle, const Instance& instance,
                          CostMode mode);

// Same for a state-feedback policy u = policy(k, x).
WorstCase worst_case_policy(const Instance& instance,
                            const std::function<double(int, double)>& policy);

// min and max of e over the unit box lie within [lo - slack, hi + slack].
bool check_affine_range(const AffineExpr& e, double lo, double hi);

struct DominationCheck {
  bool ok = true;
  std::vector<double> witness;  // first failing cube vertex
  double gap = 0.0;             // z - h(state) there, or the minimum gap
};

// z(w) >= h(state(w)) at every vertex of the unit cube.
DominationCheck check_domination(const AffineExpr& z, const PwaConvex& h,
                                 const AffineExpr& state);

}  // namespace robctl

#endif  // ROBCTL_VERIFY_H_
