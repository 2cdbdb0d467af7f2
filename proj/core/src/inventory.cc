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

#include "robctl/inventory.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "robctl/error.h"

namespace robctl {
namespace {

constexpr double kSlack = 1e-9;

std::string cell(const char* what, int k, int t, double v) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s k=%d t=%d value=%.12g", what, k, t, v);
  return buf;
}

}  // namespace

Instance build_instance(const RsfcSpec& spec) {
  if (spec.stages.empty()) {
    throw Error(ErrorKind::kInvalidInput, "inventory: horizon must be at least 1");
  }
  if (!(spec.rho >= 0.0 && spec.rho <= 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "inventory: rho must lie in [0, 1]");
  }
  Instance inst;
  inst.x1 = spec.x1;
  for (size_t t = 0; t < spec.stages.size(); ++t) {
    const RsfcStage& r = spec.stages[t];
    const std::string where = "inventory stage " + std::to_string(t + 1);
    if (!(r.H > 0.0) || !(r.B > 0.0)) {
      throw Error(ErrorKind::kInvalidInput,
                  where + ": holding and backlog costs must be positive");
    }
    if (!(r.demand >= 0.0)) {
      throw Error(ErrorKind::kInvalidInput, where + ": demand must be >= 0");
    }
    Stage s;
    s.c = r.c;
    s.L = r.L;
    s.U = r.U;
    s.w_low = r.demand * (1.0 - spec.rho);
    s.w_up = r.demand * (1.0 + spec.rho);
    s.h = PwaConvex::canonicalize({{r.H, 0.0}, {-r.B, 0.0}});
    s.gamma = -1.0;
    inst.stages.push_back(std::move(s));
  }
  validate(inst);
  return inst;
}

MemoryReport memory_report(const PolicyBundle& bundle,
                           const Instance& normalized,
                           const TransformRecord& record) {
  const int T = normalized.horizon();
  // d omega_t / d w_t for the raw demand w_t.
  std::vector<double> dw(T, 0.0);
  for (int t = 0; t < T; ++t) {
    const double width = normalized.stages[t].w_up - normalized.stages[t].w_low;
    if (width > 0.0) dw[t] = record.stages[t].disturbance_scale / width;
  }

  MemoryReport rep;
  for (int k = 1; k <= T; ++k) {
    std::vector<double> qk(k - 1);
    std::vector<double> xk(k - 1);
    for (int t = 1; t < k; ++t) {
      qk[t - 1] = record.stages[k - 1].control_scale *
                  bundle.q[k - 1].coeff(t) * dw[t - 1];
      xk[t - 1] = record.stages[k - 1].state_scale *
                  bundle.x[k - 1].coeff(t) * dw[t - 1];
    }
    rep.q.push_back(std::move(qk));
    rep.x.push_back(std::move(xk));
  }

  for (int t = 1; t < T; ++t) {
    double column = 0.0;
    bool satisfied = false;
    for (int k = t + 1; k <= T; ++k) {
      const double q = rep.q[k - 1][t - 1];
      if (q < -kSlack || q > 1.0 + kSlack) {
        rep.violations.push_back(cell("coefficient outside [0,1]", k, t, q));
      }
      if (std::abs(rep.x[k - 1][t - 1]) <= kSlack) satisfied = true;
      if (satisfied && std::abs(q) > kSlack) {
        rep.violations.push_back(cell("order after full satisfaction", k, t, q));
      }
      column += q;
    }
    if (column > 1.0 + kSlack) {
      rep.violations.push_back(cell("column sum above 1", T, t, column));
    }
  }
  return rep;
}

}  // namespace robctl
