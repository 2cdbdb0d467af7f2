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

#ifndef ROBCTL_REFORM_H_
#define ROBCTL_REFORM_H_

#include <string>
#include <utility>
#include <vector>

#include "robctl/instance.h"
#include "robctl/lp.h"

namespace robctl {

// constant + sum of coef * LP variable.
struct LinExpr {
  double constant = 0.0;
  std::vector<LpTerm> terms;

  LinExpr() = default;
  explicit LinExpr(double c) : constant(c) {}
  static LinExpr var(int v, double coef = 1.0) {
    LinExpr e;
    e.terms.push_back({v, coef});
    return e;
  }
  LinExpr& add(const LinExpr& o, double scale = 1.0);
  bool is_constant() const { return terms.empty(); }
};

// lambda[0] + sum_t lambda[t] * w_t, every lambda affine in LP variables.
struct UncertainExpr {
  std::vector<LinExpr> lambda;

  explicit UncertainExpr(int order = 0) : lambda(order + 1) {}
  int order() const { return static_cast<int>(lambda.size()) - 1; }
  UncertainExpr& add(const UncertainExpr& o, double scale = 1.0);
};

struct Box {
  double low;
  double up;
};

// Appends the robust counterpart of "e(w) <= 0 for all w in the box": one
// aggregated row and two rows per coordinate, with fresh xi_t >= 0.
// Returns the index of the aggregated row.
int robust_counterpart(LpProblem& lp, const UncertainExpr& e,
                       const std::vector<Box>& box, const std::string& name);

struct AarcModel {
  LpProblem lp;
  int value_var = 0;
  std::vector<std::vector<int>> q;  // q[k-1][t], t = 0..k-1, raw w
  std::vector<std::vector<int>> z;  // z[k-1][t], t = 0..k
};

// Affine policies and affine stage costs in the raw disturbances, every
// semi-infinite row passed through robust_counterpart.
AarcModel build_aarc(const Instance& instance, bool with_cumulative);

// Largest horizon the scenario-tree builders accept.
inline constexpr int kMaxScenarioHorizon = 14;

// Non-anticipative control per scenario-tree node (exact min-max value).
// Variable 0 is the value.
LpProblem build_scenario_exact(const Instance& instance, bool with_cumulative);

// Global affine policy coefficients with exact per-node stage costs.
// Variable 0 is the value.
LpProblem build_affine_policy_scenario(const Instance& instance,
                                       bool with_cumulative);

// Four-stage instance on which affine policies lose optimality once the
// cumulative bounds are imposed: T = 4, c = 1,
// h = max(18.5 x, -24 x), u >= 0 unbounded above, sum of u_i <= 10 k.
Instance counterexample_instance(bool with_cumulative = true);

}  // namespace robctl

#endif  // ROBCTL_REFORM_H_
