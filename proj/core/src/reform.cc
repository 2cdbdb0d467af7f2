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

#include "robctl/reform.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "robctl/error.h"

namespace robctl {
namespace {

std::vector<LpTerm> compact(std::vector<LpTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
  std::vector<LpTerm> out;
  for (const LpTerm& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const LpTerm& t) { return t.coef == 0.0; });
  return out;
}

// e <= 0.
void add_le_zero(LpProblem& lp, const LinExpr& e, std::string name) {
  lp.add_row(compact(e.terms), Relation::kLessEqual, -e.constant,
             std::move(name));
}

std::vector<Box> disturbance_box(const Instance& inst) {
  std::vector<Box> box;
  for (const Stage& s : inst.stages) box.push_back({s.w_low, s.w_up});
  return box;
}

std::vector<std::vector<double>> stage_vertices(const Instance& inst) {
  std::vector<std::vector<double>> v;
  for (const Stage& s : inst.stages) {
    if (s.w_low == s.w_up) {
      v.push_back({s.w_low});
    } else {
      v.push_back({s.w_low, s.w_up});
    }
  }
  return v;
}

void check_tree_size(const Instance& inst) {
  if (inst.horizon() > kMaxScenarioHorizon) {
    throw Error(ErrorKind::kCapability,
                "scenario tree needs horizon <= " +
                    std::to_string(kMaxScenarioHorizon) + " (got " +
                    std::to_string(inst.horizon()) + ")");
  }
}

std::string tag(const char* base, int k) {
  return std::string(base) + std::to_string(k);
}

// Node of a scenario tree: everything known after a disturbance prefix.
struct TreeNode {
  LinExpr state;
  LinExpr cost;
  LinExpr cum;
  std::vector<double> w;
};

enum class PolicyKind { kPerNode, kAffine };

LpProblem build_tree(const Instance& inst, bool with_cumulative,
                     PolicyKind kind) {
  validate(inst);
  check_tree_size(inst);
  const int T = inst.horizon();
  const auto verts = stage_vertices(inst);
  LpProblem lp;
  const int J = lp.add_variable(-kLpInf, kLpInf, 1.0, "J");

  std::vector<std::vector<int>> q;
  if (kind == PolicyKind::kAffine) {
    for (int k = 1; k <= T; ++k) {
      std::vector<int> row;
      for (int t = 0; t < k; ++t) {
        row.push_back(lp.add_variable(-kLpInf, kLpInf, 0.0,
                                      "q" + std::to_string(k) + "_" +
                                          std::to_string(t)));
      }
      q.push_back(std::move(row));
    }
  }

  std::vector<TreeNode> level(1);
  level[0].state = LinExpr(inst.x1);
  int node_id = 0;
  for (int k = 1; k <= T; ++k) {
    const Stage& s = inst.stages[k - 1];
    std::vector<TreeNode> next;
    next.reserve(level.size() * verts[k - 1].size());
    for (const TreeNode& node : level) {
      const std::string id = std::to_string(k) + "_" + std::to_string(node_id++);
      LinExpr u;
      if (kind == PolicyKind::kPerNode) {
        u = LinExpr::var(lp.add_variable(s.L, s.U, 0.0, "u" + id));
      } else {
        u = LinExpr::var(q[k - 1][0]);
        for (int t = 1; t < k; ++t) {
          u.add(LinExpr::var(q[k - 1][t], node.w[t - 1]));
        }
        if (std::isfinite(s.L)) {
          LinExpr lo(s.L);
          lo.add(u, -1.0);
          add_le_zero(lp, lo, "ulo" + id);
        }
        if (std::isfinite(s.U)) {
          LinExpr hi(-s.U);
          hi.add(u);
          add_le_zero(lp, hi, "uhi" + id);
        }
      }
      LinExpr cum = node.cum;
      cum.add(u);
      if (with_cumulative && s.cum_bound) {
        LinExpr row = cum;
        row.constant -= *s.cum_bound;
        add_le_zero(lp, row, "cum" + id);
      }
      for (size_t v = 0; v < verts[k - 1].size(); ++v) {
        const double w = verts[k - 1][v];
        TreeNode child;
        child.state.add(node.state, s.alpha);
        child.state.add(u, s.beta);
        child.state.constant += s.gamma * w;
        const std::string cid = id + "_" + std::to_string(v);
        const int z = lp.add_variable(-kLpInf, kLpInf, 0.0, "z" + cid);
        for (size_t p = 0; p < s.h.pieces().size(); ++p) {
          const AffinePiece& piece = s.h.pieces()[p];
          LinExpr row(piece.intercept);
          row.add(child.state, piece.slope);
          row.add(LinExpr::var(z), -1.0);
          add_le_zero(lp, row, "h" + cid + "_" + std::to_string(p));
        }
        child.cost = node.cost;
        child.cost.add(u, s.c);
        child.cost.add(LinExpr::var(z));
        child.cum = cum;
        child.w = node.w;
        child.w.push_back(w);
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  for (size_t i = 0; i < level.size(); ++i) {
    LinExpr row = level[i].cost;
    row.add(LinExpr::var(J), -1.0);
    add_le_zero(lp, row, "epi" + std::to_string(i));
  }
  return lp;
}

}  // namespace

LinExpr& LinExpr::add(const LinExpr& o, double scale) {
  constant += scale * o.constant;
  for (const LpTerm& t : o.terms) terms.push_back({t.var, scale * t.coef});
  return *this;
}

UncertainExpr& UncertainExpr::add(const UncertainExpr& o, double scale) {
  if (o.order() > order()) lambda.resize(o.lambda.size());
  for (size_t t = 0; t < o.lambda.size(); ++t) lambda[t].add(o.lambda[t], scale);
  return *this;
}

int robust_counterpart(LpProblem& lp, const UncertainExpr& e,
                       const std::vector<Box>& box, const std::string& name) {
  const int m = e.order();
  if (static_cast<int>(box.size()) < m) {
    throw Error(ErrorKind::kInvalidInput, "robust_counterpart: box too small");
  }
  LinExpr agg = e.lambda[0];
  std::vector<int> xi(m);
  for (int t = 1; t <= m; ++t) {
    const Box& b = box[t - 1];
    xi[t - 1] = lp.add_variable(0.0, kLpInf, 0.0,
                                name + "_xi" + std::to_string(t));
    agg.add(e.lambda[t], 0.5 * (b.low + b.up));
    agg.add(LinExpr::var(xi[t - 1], 0.5 * (b.up - b.low)));
  }
  const int row = lp.num_rows();
  add_le_zero(lp, agg, name);
  for (int t = 1; t <= m; ++t) {
    LinExpr pos = e.lambda[t];
    pos.add(LinExpr::var(xi[t - 1]), -1.0);
    add_le_zero(lp, pos, name + "_p" + std::to_string(t));
    LinExpr neg;
    neg.add(e.lambda[t], -1.0);
    neg.add(LinExpr::var(xi[t - 1]), -1.0);
    add_le_zero(lp, neg, name + "_n" + std::to_string(t));
  }
  return row;
}

AarcModel build_aarc(const Instance& inst, bool with_cumulative) {
  validate(inst);
  const int T = inst.horizon();
  const std::vector<Box> box = disturbance_box(inst);
  AarcModel model;
  LpProblem& lp = model.lp;
  model.value_var = lp.add_variable(-kLpInf, kLpInf, 1.0, "J");
  for (int k = 1; k <= T; ++k) {
    std::vector<int> qk;
    for (int t = 0; t < k; ++t) {
      qk.push_back(lp.add_variable(-kLpInf, kLpInf, 0.0,
                                   "q" + std::to_string(k) + "_" + std::to_string(t)));
    }
    std::vector<int> zk;
    for (int t = 0; t <= k; ++t) {
      zk.push_back(lp.add_variable(-kLpInf, kLpInf, 0.0,
                                   "z" + std::to_string(k) + "_" + std::to_string(t)));
    }
    model.q.push_back(std::move(qk));
    model.z.push_back(std::move(zk));
  }

  UncertainExpr x(0);
  x.lambda[0] = LinExpr(inst.x1);
  UncertainExpr epi(T);
  UncertainExpr cum(0);
  for (int k = 1; k <= T; ++k) {
    const Stage& s = inst.stages[k - 1];
    UncertainExpr u(k - 1);
    for (int t = 0; t < k; ++t) u.lambda[t] = LinExpr::var(model.q[k - 1][t]);
    if (std::isfinite(s.L)) {
      UncertainExpr row(k - 1);
      row.add(u, -1.0);
      row.lambda[0].constant += s.L;
      robust_counterpart(lp, row, box, tag("ulo", k));
    }
    if (std::isfinite(s.U)) {
      UncertainExpr row(k - 1);
      row.add(u);
      row.lambda[0].constant -= s.U;
      robust_counterpart(lp, row, box, tag("uhi", k));
    }
    UncertainExpr next(k);
    next.add(x, s.alpha);
    next.add(u, s.beta);
    next.lambda[k].constant += s.gamma;
    UncertainExpr z(k);
    for (int t = 0; t <= k; ++t) z.lambda[t] = LinExpr::var(model.z[k - 1][t]);
    for (size_t p = 0; p < s.h.pieces().size(); ++p) {
      const AffinePiece& piece = s.h.pieces()[p];
      UncertainExpr row(k);
      row.add(next, piece.slope);
      row.add(z, -1.0);
      row.lambda[0].constant += piece.intercept;
      robust_counterpart(lp, row, box,
                         tag("h", k) + "_" + std::to_string(p));
    }
    epi.add(u, s.c);
    epi.add(z);
    cum.add(u);
    if (with_cumulative && s.cum_bound) {
      UncertainExpr row = cum;
      row.lambda[0].constant -= *s.cum_bound;
      robust_counterpart(lp, row, box, tag("cum", k));
    }
    x = std::move(next);
  }
  epi.lambda[0].add(LinExpr::var(model.value_var), -1.0);
  robust_counterpart(lp, epi, box, "epi");
  return model;
}

LpProblem build_scenario_exact(const Instance& inst, bool with_cumulative) {
  return build_tree(inst, with_cumulative, PolicyKind::kPerNode);
}

LpProblem build_affine_policy_scenario(const Instance& inst,
                                       bool with_cumulative) {
  return build_tree(inst, with_cumulative, PolicyKind::kAffine);
}

Instance counterexample_instance(bool with_cumulative) {
  const double lows[] = {-7.0, -11.0, -8.0, -44.0};
  Instance inst;
  inst.x1 = 0.0;
  for (int k = 0; k < 4; ++k) {
    Stage s;
    s.c = 1.0;
    s.L = 0.0;
    s.U = kLpInf;
    s.w_low = lows[k];
    s.w_up = 0.0;
    s.h = PwaConvex::canonicalize({{18.5, 0.0}, {-24.0, 0.0}});
    if (with_cumulative) s.cum_bound = 10.0 * (k + 1);
    inst.stages.push_back(std::move(s));
  }
  return inst;
}

}  // namespace robctl
