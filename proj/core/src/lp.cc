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

#include "robctl/lp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "robctl/error.h"

namespace robctl {
namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kHarrisTol = 1e-9;

// Original variable j = offset + sum of sign * structural column.
struct VarMap {
  double offset = 0.0;
  int col = -1;
  double sign = 1.0;
  int col_neg = -1;  // second column of a free variable, coefficient -1
};

class Tableau {
 public:
  Tableau(int m, int n) : m_(m), n_(n), a_(static_cast<size_t>(m) * (n + 1), 0.0),
                          basis_(m, -1) {}

  double& at(int i, int j) { return a_[static_cast<size_t>(i) * (n_ + 1) + j]; }
  double at(int i, int j) const {
    return a_[static_cast<size_t>(i) * (n_ + 1) + j];
  }
  double& rhs(int i) { return at(i, n_); }
  int rows() const { return m_; }
  int cols() const { return n_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int e, std::vector<double>& reduced) {
    const double inv = 1.0 / at(r, e);
    nz_.clear();
    for (int j = 0; j <= n_; ++j) {
      double& v = at(r, j);
      if (v != 0.0) {
        v *= inv;
        nz_.push_back(j);
      }
    }
    at(r, e) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      double* row = &a_[static_cast<size_t>(i) * (n_ + 1)];
      const double* prow = &a_[static_cast<size_t>(r) * (n_ + 1)];
      for (int j : nz_) row[j] -= f * prow[j];
      row[e] = 0.0;
    }
    const double f = reduced[e];
    if (f != 0.0) {
      const double* prow = &a_[static_cast<size_t>(r) * (n_ + 1)];
      for (int j : nz_) reduced[j] -= f * prow[j];
      reduced[e] = 0.0;
    }
    basis_[r] = e;
  }

 private:
  int m_;
  int n_;
  std::vector<double> a_;
  std::vector<int> basis_;
  std::vector<int> nz_;
};

enum class RunResult { kOptimal, kUnbounded };

// Minimizes cost over the current basis; reduced[n] holds -objective.
RunResult run_simplex(Tableau& t, const std::vector<double>& cost,
                      const std::vector<char>& enterable, int* iterations) {
  const int m = t.rows();
  const int n = t.cols();
  std::vector<double> reduced(n + 1, 0.0);
  for (int j = 0; j < n; ++j) reduced[j] = cost[j];
  for (int i = 0; i < m; ++i) {
    const double cb = cost[t.basis()[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= n; ++j) reduced[j] -= cb * t.at(i, j);
  }

  bool bland = false;
  int degenerate = 0;
  const long max_iter = 100000L + 50L * (m + n);
  for (long it = 0; it < max_iter; ++it) {
    int e = -1;
    double best = -kReducedCostTol;
    for (int j = 0; j < n; ++j) {
      if (!enterable[j] || reduced[j] >= -kReducedCostTol) continue;
      if (bland) {
        e = j;
        break;
      }
      if (reduced[j] < best) {
        best = reduced[j];
        e = j;
      }
    }
    if (e < 0) return RunResult::kOptimal;

    int r = -1;
    double ratio = 0.0;
    if (bland) {
      for (int i = 0; i < m; ++i) {
        const double a = t.at(i, e);
        if (a <= kPivotTol) continue;
        const double q = std::max(t.rhs(i), 0.0) / a;
        if (r < 0 || q < ratio - kRatioTieTol ||
            (q <= ratio + kRatioTieTol && t.basis()[i] < t.basis()[r])) {
          r = i;
          ratio = q;
        }
      }
    } else {
      // Two-pass ratio test: relaxed bound first, then the largest pivot.
      double bound = kLpInf;
      for (int i = 0; i < m; ++i) {
        const double a = t.at(i, e);
        if (a <= kPivotTol) continue;
        bound = std::min(bound, (std::max(t.rhs(i), 0.0) + kHarrisTol) / a);
      }
      double best_a = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = t.at(i, e);
        if (a <= kPivotTol) continue;
        const double q = std::max(t.rhs(i), 0.0) / a;
        if (q > bound) continue;
        if (r < 0 || a > best_a ||
            (a == best_a && t.basis()[i] < t.basis()[r])) {
          r = i;
          best_a = a;
          ratio = q;
        }
      }
    }
    if (r < 0) return RunResult::kUnbounded;
    if (ratio <= kRatioTieTol) {
      if (++degenerate > kDegenerateSwitch) bland = true;
    }
    t.pivot(r, e, reduced);
    ++*iterations;
  }
  throw Error(ErrorKind::kInternal, "simplex iteration limit reached");
}

}  // namespace

int LpProblem::add_variable(double lb, double ub, double cost,
                            std::string name) {
  lower.push_back(lb);
  upper.push_back(ub);
  objective.push_back(cost);
  if (name.empty()) name = "x" + std::to_string(objective.size());
  names.push_back(std::move(name));
  return num_vars() - 1;
}

int LpProblem::add_row(std::vector<LpTerm> terms, Relation rel, double rhs,
                       std::string name) {
  if (name.empty()) name = "r" + std::to_string(rows.size() + 1);
  rows.push_back({std::move(terms), rel, rhs, std::move(name)});
  return num_rows() - 1;
}

int LpProblem::add_dense_row(const std::vector<double>& coefs, Relation rel,
                             double rhs, std::string name) {
  std::vector<LpTerm> terms;
  for (int j = 0; j < static_cast<int>(coefs.size()); ++j) {
    if (coefs[j] != 0.0) terms.push_back({j, coefs[j]});
  }
  return add_row(std::move(terms), rel, rhs, std::move(name));
}

const char* status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

LpSolution solve(const LpProblem& p) {
  const int nv = p.num_vars();
  if (static_cast<int>(p.lower.size()) != nv ||
      static_cast<int>(p.upper.size()) != nv) {
    throw Error(ErrorKind::kInvalidInput, "lp: bound vectors do not match variable count");
  }
  for (int j = 0; j < nv; ++j) {
    if (!std::isfinite(p.objective[j]) || std::isnan(p.lower[j]) ||
        std::isnan(p.upper[j])) {
      throw Error(ErrorKind::kInvalidInput, "lp: non-finite objective or bound");
    }
  }
  for (const LpRow& row : p.rows) {
    if (!std::isfinite(row.rhs)) {
      throw Error(ErrorKind::kInvalidInput, "lp: non-finite rhs in row " + row.name);
    }
    for (const LpTerm& term : row.terms) {
      if (term.var < 0 || term.var >= nv) {
        throw Error(ErrorKind::kInvalidInput, "lp: row " + row.name + " references a missing variable");
      }
      if (!std::isfinite(term.coef)) {
        throw Error(ErrorKind::kInvalidInput, "lp: non-finite coefficient in row " + row.name);
      }
    }
  }

  LpSolution sol;
  for (int j = 0; j < nv; ++j) {
    if (p.lower[j] > p.upper[j]) return sol;  // infeasible
  }

  // Shift and split bounded and free variables onto x' >= 0.
  std::vector<VarMap> vm(nv);
  int ns = 0;
  struct BoundRow {
    int col;
    double width;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < nv; ++j) {
    const double lb = p.lower[j];
    const double ub = p.upper[j];
    VarMap& v = vm[j];
    if (std::isfinite(lb)) {
      v.offset = lb;
      v.col = ns++;
      if (std::isfinite(ub)) bound_rows.push_back({v.col, ub - lb});
    } else if (std::isfinite(ub)) {
      v.offset = ub;
      v.col = ns++;
      v.sign = -1.0;
    } else {
      v.col = ns++;
      v.col_neg = ns++;
    }
  }

  struct StdRow {
    std::vector<std::pair<int, double>> coefs;
    Relation rel;
    double rhs;
  };
  std::vector<StdRow> std_rows;
  std_rows.reserve(p.rows.size() + bound_rows.size());
  std::vector<double> dense(ns, 0.0);
  std::vector<int> touched;
  for (const LpRow& row : p.rows) {
    double rhs = row.rhs;
    for (const LpTerm& term : row.terms) {
      const VarMap& v = vm[term.var];
      rhs -= term.coef * v.offset;
      auto bump = [&](int col, double c) {
        if (dense[col] == 0.0) touched.push_back(col);
        dense[col] += c;
      };
      bump(v.col, term.coef * v.sign);
      if (v.col_neg >= 0) bump(v.col_neg, -term.coef);
    }
    StdRow sr{{}, row.relation, rhs};
    std::sort(touched.begin(), touched.end());
    for (int col : touched) {
      if (dense[col] != 0.0) sr.coefs.push_back({col, dense[col]});
      dense[col] = 0.0;
    }
    touched.clear();
    std_rows.push_back(std::move(sr));
  }
  for (const BoundRow& br : bound_rows) {
    std_rows.push_back({{{br.col, 1.0}}, Relation::kLessEqual, br.width});
  }

  const int m = static_cast<int>(std_rows.size());
  double bnorm = 0.0;
  int n_slack = 0;
  int n_art = 0;
  for (StdRow& sr : std_rows) {
    if (sr.rhs < 0.0) {
      sr.rhs = -sr.rhs;
      for (auto& c : sr.coefs) c.second = -c.second;
      if (sr.rel == Relation::kLessEqual) sr.rel = Relation::kGreaterEqual;
      else if (sr.rel == Relation::kGreaterEqual) sr.rel = Relation::kLessEqual;
    }
    double scale = 0.0;
    for (const auto& c : sr.coefs) scale = std::max(scale, std::abs(c.second));
    if (scale > 0.0) {
      for (auto& c : sr.coefs) c.second /= scale;
      sr.rhs /= scale;
    }
    bnorm = std::max(bnorm, sr.rhs);
    if (sr.rel != Relation::kEqual) ++n_slack;
    if (sr.rel != Relation::kLessEqual) ++n_art;
  }

  const int n = ns + n_slack + n_art;
  Tableau t(m, n);
  std::vector<char> is_art(n, 0);
  int next_slack = ns;
  int next_art = ns + n_slack;
  for (int i = 0; i < m; ++i) {
    const StdRow& sr = std_rows[i];
    for (const auto& c : sr.coefs) t.at(i, c.first) = c.second;
    t.rhs(i) = sr.rhs;
    switch (sr.rel) {
      case Relation::kLessEqual:
        t.at(i, next_slack) = 1.0;
        t.basis()[i] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.at(i, next_slack++) = -1.0;
        [[fallthrough]];
      case Relation::kEqual:
        t.at(i, next_art) = 1.0;
        is_art[next_art] = 1;
        t.basis()[i] = next_art++;
        break;
    }
  }

  if (n_art > 0) {
    std::vector<double> cost1(n, 0.0);
    for (int j = 0; j < n; ++j) cost1[j] = is_art[j] ? 1.0 : 0.0;
    std::vector<char> all(n, 1);
    run_simplex(t, cost1, all, &sol.iterations);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (is_art[t.basis()[i]]) infeas += t.rhs(i);
    }
    if (infeas > kFeasibilityTol * (1.0 + bnorm)) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Pivot zero-level artificials out where a structural column allows.
    std::vector<double> scratch(n + 1, 0.0);
    for (int i = 0; i < m; ++i) {
      if (!is_art[t.basis()[i]]) continue;
      int best = -1;
      double mag = kPivotTol;
      for (int j = 0; j < n; ++j) {
        if (is_art[j]) continue;
        if (std::abs(t.at(i, j)) > mag) {
          mag = std::abs(t.at(i, j));
          best = j;
        }
      }
      if (best >= 0) t.pivot(i, best, scratch);
    }
  }

  std::vector<double> cost2(n, 0.0);
  for (int j = 0; j < nv; ++j) {
    const VarMap& v = vm[j];
    cost2[v.col] += p.objective[j] * v.sign;
    if (v.col_neg >= 0) cost2[v.col_neg] -= p.objective[j];
  }
  std::vector<char> enterable(n, 1);
  for (int j = 0; j < n; ++j) enterable[j] = !is_art[j];
  if (run_simplex(t, cost2, enterable, &sol.iterations) ==
      RunResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  std::vector<double> xs(n, 0.0);
  for (int i = 0; i < m; ++i) xs[t.basis()[i]] = t.rhs(i);
  sol.x.assign(nv, 0.0);
  sol.objective = 0.0;
  for (int j = 0; j < nv; ++j) {
    const VarMap& v = vm[j];
    double x = v.offset + v.sign * xs[v.col];
    if (v.col_neg >= 0) x -= xs[v.col_neg];
    sol.x[j] = x;
    sol.objective += p.objective[j] * x;
  }
  sol.status = LpStatus::kOptimal;
  return sol;
}

double max_violation(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (const LpRow& row : p.rows) {
    double lhs = 0.0;
    for (const LpTerm& term : row.terms) lhs += term.coef * x[term.var];
    double v = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual: v = lhs - row.rhs; break;
      case Relation::kGreaterEqual: v = row.rhs - lhs; break;
      case Relation::kEqual: v = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, v / (1.0 + std::abs(row.rhs)));
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    if (std::isfinite(p.lower[j])) {
      worst = std::max(worst, (p.lower[j] - x[j]) / (1.0 + std::abs(p.lower[j])));
    }
    if (std::isfinite(p.upper[j])) {
      worst = std::max(worst, (x[j] - p.upper[j]) / (1.0 + std::abs(p.upper[j])));
    }
  }
  return worst;
}

namespace {

void write_number(std::ostream& out, double v) {
  if (v == kLpInf) {
    out << "inf";
  } else if (v == -kLpInf) {
    out << "-inf";
  } else {
    out << v;
  }
}

void write_terms(std::ostream& out, const LpProblem& p,
                 const std::vector<LpTerm>& terms) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  for (const LpTerm& t : terms) {
    out << (t.coef < 0 ? " - " : " + ");
    write_number(out, std::abs(t.coef));
    out << ' ' << p.names[t.var];
  }
}

}  // namespace

void write_lp_text(const LpProblem& p, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "\\ " << p.num_vars() << " variables, " << p.num_rows()
      << " constraints\n";
  out << "Minimize\n obj:";
  std::vector<LpTerm> obj;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (p.objective[j] != 0.0) obj.push_back({j, p.objective[j]});
  }
  write_terms(out, p, obj);
  out << "\nSubject To\n";
  for (const LpRow& row : p.rows) {
    out << ' ' << row.name << ':';
    write_terms(out, p, row.terms);
    switch (row.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    write_number(out, row.rhs);
    out << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    const double lb = p.lower[j];
    const double ub = p.upper[j];
    out << ' ';
    if (lb == -kLpInf && ub == kLpInf) {
      out << p.names[j] << " free";
    } else if (lb == ub) {
      out << p.names[j] << " = ";
      write_number(out, lb);
    } else {
      write_number(out, lb);
      out << " <= " << p.names[j] << " <= ";
      write_number(out, ub);
    }
    out << '\n';
  }
  out << "End\n";
  out.precision(old_precision);
}

}  // namespace robctl
