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

#ifndef ROBCTL_CONSTRUCT_H_
#define ROBCTL_CONSTRUCT_H_

#include <optional>
#include <string>
#include <vector>

#include "robctl/affine.h"
#include "robctl/dp.h"
#include "robctl/instance.h"
#include "robctl/pwa.h"
#include "robctl/zonogon.h"

namespace robctl {

enum class CaseTag { kC1, kC2, kC3, kC4a, kC4b, kC4c };
const char* case_name(CaseTag tag);

// Position of the state zonogon against the band of unsaturated controls.
struct CaseAnalysis {
  CaseTag tag = CaseTag::kC2;
  double band_low = 0.0;  // y_low - U
  double band_up = 0.0;   // y_up - L
  double y_hat = 0.0;     // minimizer the controller aims at
  double eff_low = 0.0;   // y_hat - U
  double eff_up = 0.0;    // y_hat - L
  int k = 0;              // number of canonical generators
  int t = 0;
  int s_hat = 0;
  int r_hat = 0;
  int s = 0;
  int r = 0;
  std::vector<int> matched;
  std::optional<double> K_U;
  std::optional<double> K_L;
};

// Data of one stage needed by the controller step.
struct StageControl {
  double c = 0.0;
  double L = 0.0;
  double U = 0.0;
  double y_low = 0.0;
  double y_up = 0.0;
};

// 0 if a_1/b_1 <= c, else the largest i with a_i/b_i > c.
int index_t(const Zonogon& z, double c);

struct GammaMap {
  std::vector<Point2> points;  // v~_0 .. v~_k
  std::vector<double> controls;  // u(v_i)
  CaseAnalysis analysis;
};

GammaMap map_gamma_tilde(const Zonogon& z, const StageControl& st);

struct ControllerResult {
  AffineExpr q;                    // over the original coordinates
  std::vector<double> canonical;   // q_0, q_1..q_k over the generators
  CaseAnalysis analysis;
};

// Affine controller whose image of the zonogon keeps the worst case of
// theta1 + c u + g(theta2 + u) at the optimal value.
ControllerResult algorithm1(const Zonogon& z, const StageControl& st);

struct CostResult {
  AffineExpr z;
  std::vector<double> canonical;
  std::vector<int> matched;
};

// Affine stage cost over pi = (pi1, pi2) dominating h(pi2) on the cube and
// keeping the worst case of pi1 + h(pi2) + J(pi2) for every convex J.
CostResult algorithm2(const AffineExpr& pi1, const AffineExpr& pi2,
                      const PwaConvex& h);

struct StageCertificate {
  double range_low = 0.0;   // min of q over the cube
  double range_up = 0.0;    // max of q over the cube
  double controller_objective = 0.0;  // max over image of gamma1 + g
  double cost_objective = 0.0;        // max of theta1' + J_{k+1}
  double domination_slack = 0.0;      // min of z - h(pi2), >= 0
};

struct PolicyBundle {
  std::vector<AffineExpr> q;       // q_k, order k - 1
  std::vector<AffineExpr> z;       // z_k, order k
  std::vector<AffineExpr> x;       // x_1 .. x_{T+1}, x_k of order k - 1
  double value = 0.0;
  std::vector<CaseAnalysis> cases;
  std::vector<StageCertificate> certificates;
};

// Objective tolerance used by the runtime certificates.
double objective_tolerance(double value);

// Forward induction over a normalized instance. Disturbance k enters as
// w_low + (w_up - w_low) * omega_k with omega_k in [0, 1]. Throws
// Error(kInternal) with diagnostics when a certificate fails.
PolicyBundle forward_induction(const Instance& instance, const DpSolution& dp);

}  // namespace robctl

#endif  // ROBCTL_CONSTRUCT_H_
