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

#ifndef ROBCTL_LP_H_
#define ROBCTL_LP_H_

#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace robctl {

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();
inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr int kDegenerateSwitch = 5000;

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  int var;
  double coef;
};

struct LpRow {
  std::vector<LpTerm> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// min c'x subject to rows and lower <= x <= upper (bounds may be infinite).
struct LpProblem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double lb, double ub, double cost, std::string name = {});
  int add_row(std::vector<LpTerm> terms, Relation rel, double rhs,
              std::string name = {});
  int add_dense_row(const std::vector<double>& coefs, Relation rel,
                    double rhs, std::string name = {});
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
const char* status_name(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

// Dense two-phase primal simplex. Throws Error(kInvalidInput) on dimension
// mismatch or non-finite coefficients.
LpSolution solve(const LpProblem& problem);

// Largest violation of rows and bounds at x, scaled by 1 + |rhs|.
double max_violation(const LpProblem& problem, const std::vector<double>& x);

// Human-readable LP text (objective, constraints, bounds sections).
void write_lp_text(const LpProblem& problem, std::ostream& out);

}  // namespace robctl

#endif  // ROBCTL_LP_H_
