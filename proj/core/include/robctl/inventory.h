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

#ifndef ROBCTL_INVENTORY_H_
#define ROBCTL_INVENTORY_H_

#include <string>
#include <vector>

#include "robctl/construct.h"
#include "robctl/instance.h"

namespace robctl {

struct RsfcStage {
  double demand = 0.0;  // nominal demand d_t >= 0
  double c = 0.0;       // order cost
  double H = 0.0;       // holding cost
  double B = 0.0;       // backlog cost
  double L = 0.0;
  double U = 0.0;
};

// Single-product, single-echelon retailer with demand uncertainty
// |w_t - d_t| <= rho d_t.
struct RsfcSpec {
  double x1 = 0.0;
  double rho = 0.0;
  std::vector<RsfcStage> stages;
};

// Inventory dynamics x_{t+1} = x_t + u_t - w_t with newsvendor cost
// max(H x, -B x). Throws Error(kInvalidInput) when H or B is not positive.
Instance build_instance(const RsfcSpec& spec);

// Order coefficients against the raw demands.
struct MemoryReport {
  // q[k-1][t-1]: coefficient of w_t in u_k, t < k.
  std::vector<std::vector<double>> q;
  // x[k-1][t-1]: coefficient of w_t in x_k, t < k.
  std::vector<std::vector<double>> x;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Coefficients of a bundle built on normalize(build_instance(spec)),
// mapped back through the record, and checks: each q in [0, 1]; each
// column sums to at most 1; once x_{k,t} = 0 every later q_{tau,t} = 0.
MemoryReport memory_report(const PolicyBundle& bundle,
                           const Instance& normalized,
                           const TransformRecord& record);

}  // namespace robctl

#endif  // ROBCTL_INVENTORY_H_
