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

#include "robctl/construct.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "robctl/error.h"

namespace robctl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBandTol = 1e-9;
constexpr double kSingularTol = 1e-12;

double band_tol(double x) {
  return std::isfinite(x) ? kBandTol * (1.0 + std::abs(x)) : 0.0;
}

// Minimizer aimed at by the controller. Prefers one for which the whole
// theta2 range of the zonogon stays unsaturated.
double choose_y_hat(double m2, double M2, const StageControl& st,
                    bool* fits) {
  const double lo_fit = std::max(st.y_low, M2 + st.L);
  const double hi_fit = std::min(st.y_up, m2 + st.U);
  *fits = lo_fit <= hi_fit;
  if (*fits) {
    if (std::isfinite(lo_fit)) return lo_fit;
    if (std::isfinite(hi_fit)) return hi_fit;
    return std::clamp(0.0, lo_fit, hi_fit);
  }
  if (st.y_low == -kInf && st.L == -kInf) return st.y_up;
  return st.y_low;
}

[[noreturn]] void certificate_failure(int k, const std::string& what,
                                      double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << "certificate failed at stage " << k << ": " << what << " (got "
     << got << ", expected " << want << ")";
  throw Error(ErrorKind::kInternal, os.str());
}

}  // namespace

const char* case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::kC1: return "C1";
    case CaseTag::kC2: return "C2";
    case CaseTag::kC3: return "C3";
    case CaseTag::kC4a: return "C4a";
    case CaseTag::kC4b: return "C4b";
    case CaseTag::kC4c: return "C4c";
  }
  return "?";
}

int index_t(const Zonogon& z, double c) {
  int t = 0;
  for (int i = 0; i < z.size(); ++i) {
    const Point2& g = z.generators()[i];
    if (g.x / g.y > c) t = i + 1;
  }
  return t;
}

GammaMap map_gamma_tilde(const Zonogon& z, const StageControl& st) {
  const std::vector<Point2> v = z.right_side();
  const int p = z.size();
  GammaMap out;
  CaseAnalysis& ca = out.analysis;
  ca.k = p;
  ca.band_low = st.y_low - st.U;
  ca.band_up = st.y_up - st.L;

  bool fits = false;
  const double m2 = v.front().y;
  const double M2 = v.back().y;
  ca.y_hat = choose_y_hat(m2, M2, st, &fits);
  ca.eff_low = ca.y_hat - st.U;
  ca.eff_up = ca.y_hat - st.L;
  ca.t = index_t(z, st.c);

  ca.s_hat = p + 1;
  ca.r_hat = -1;
  for (int i = 0; i <= p; ++i) {
    if (v[i].y >= ca.eff_low && ca.s_hat > p) ca.s_hat = i;
    if (v[i].y <= ca.eff_up) ca.r_hat = i;
  }

  out.points.resize(p + 1);
  out.controls.resize(p + 1);
  for (int i = 0; i <= p; ++i) {
    const double free_u = ca.y_hat - v[i].y;
    double u;
    double y;
    if (free_u >= st.L && free_u <= st.U) {
      u = free_u;
      y = ca.y_hat;
    } else {
      u = free_u < st.L ? st.L : st.U;
      y = v[i].y + u;
    }
    out.controls[i] = u;
    out.points[i] = {v[i].x + st.c * u, y};
  }

  const double vt = v[ca.t].y;
  if (M2 < ca.eff_low - band_tol(ca.eff_low)) {
    ca.tag = CaseTag::kC1;
  } else if (m2 > ca.eff_up + band_tol(ca.eff_up)) {
    ca.tag = CaseTag::kC3;
  } else if (fits) {
    ca.tag = CaseTag::kC2;
  } else if (vt < ca.eff_low - band_tol(ca.eff_low)) {
    ca.tag = CaseTag::kC4a;
  } else if (vt > ca.eff_up + band_tol(ca.eff_up)) {
    ca.tag = CaseTag::kC4c;
  } else {
    ca.tag = CaseTag::kC4b;
  }

  std::vector<int> matched = right_side_indices(out.points);
  matched.push_back(0);
  matched.push_back(p);
  std::sort(matched.begin(), matched.end());
  matched.erase(std::unique(matched.begin(), matched.end()), matched.end());
  ca.matched = matched;

  ca.s = 0;
  while (ca.s + 1 < static_cast<int>(matched.size()) &&
         matched[ca.s + 1] == ca.s + 1) {
    ++ca.s;
  }
  ca.r = p;
  for (int i = static_cast<int>(matched.size()) - 1;
       i > 0 && matched[i - 1] == ca.r - 1; --i) {
    --ca.r;
  }
  // A single run covers everything: report it as the prefix.
  ca.r = std::max(ca.r, ca.s);
  const int lo_end = std::min(ca.t, ca.r);
  const int hi_start = std::max(ca.t, ca.s);
  if (lo_end > ca.s) {
    ca.K_U = cotan(out.points[ca.s], out.points[lo_end]);
  }
  if (ca.r > hi_start) {
    ca.K_L = cotan(out.points[hi_start], out.points[ca.r]);
  }
  return out;
}

ControllerResult algorithm1(const Zonogon& z, const StageControl& st) {
  GammaMap gm = map_gamma_tilde(z, st);
  const int p = z.size();
  const std::vector<Point2>& gens = z.generators();
  std::vector<double> f(p + 1, 0.0);

  switch (gm.analysis.tag) {
    case CaseTag::kC1:
      f[0] = st.U;
      break;
    case CaseTag::kC3:
      f[0] = st.L;
      break;
    case CaseTag::kC2:
      f[0] = gm.analysis.y_hat - z.offset().y;
      for (int j = 1; j <= p; ++j) f[j] = -gens[j - 1].y;
      break;
    default: {
      const std::vector<int>& m = gm.analysis.matched;
      f[0] = gm.controls[0];
      for (size_t n = 1; n < m.size(); ++n) {
        const int i0 = m[n - 1];
        const int i1 = m[n];
        if (i1 == i0 + 1) {
          f[i1] = gm.controls[i1] - gm.controls[i0];
          continue;
        }
        const Point2 a = gm.points[i0];
        const Point2 b = gm.points[i1];
        if (a.y == b.y) {
          // Both ends unsaturated: the control absorbs every generator.
          for (int j = i0 + 1; j <= i1; ++j) f[j] = -gens[j - 1].y;
          continue;
        }
        const double K = cotan(a, b);
        if (std::abs(K - st.c) < kSingularTol) {
          throw Error(ErrorKind::kInternal, "alignment singular");
        }
        for (int j = i0 + 1; j <= i1; ++j) {
          f[j] = (gens[j - 1].x - K * gens[j - 1].y) / (K - st.c);
        }
      }
    }
  }
  ControllerResult out;
  out.q = z.pull_back(f);
  out.canonical = std::move(f);
  out.analysis = std::move(gm.analysis);
  return out;
}

CostResult algorithm2(const AffineExpr& pi1, const AffineExpr& pi2,
                      const PwaConvex& h) {
  const Zonogon z = Zonogon::from_affine_pair(pi1, pi2);
  const std::vector<Point2> v = z.right_side();
  const int p = z.size();
  std::vector<Point2> pts(p + 1);
  std::vector<double> hv(p + 1);
  for (int i = 0; i <= p; ++i) {
    hv[i] = h.eval(v[i].y);
    pts[i] = {v[i].x + hv[i], v[i].y};
  }
  std::vector<int> m = right_side_indices(pts);
  m.push_back(0);
  m.push_back(p);
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());

  std::vector<double> f(p + 1, 0.0);
  f[0] = hv[0];
  const std::vector<Point2>& gens = z.generators();
  for (size_t n = 1; n < m.size(); ++n) {
    const int i0 = m[n - 1];
    const int i1 = m[n];
    if (i1 == i0 + 1) {
      f[i1] = hv[i1] - hv[i0];
      continue;
    }
    const double K = cotan(pts[i0], pts[i1]);
    for (int j = i0 + 1; j <= i1; ++j) {
      f[j] = K * gens[j - 1].y - gens[j - 1].x;
    }
  }
  CostResult out;
  out.z = z.pull_back(f);
  out.canonical = std::move(f);
  out.matched = std::move(m);
  return out;
}

double objective_tolerance(double value) {
  return 1e-7 * (1.0 + std::abs(value));
}

PolicyBundle forward_induction(const Instance& instance, const DpSolution& dp) {
  if (!instance.has_unit_dynamics()) {
    throw Error(ErrorKind::kInvalidInput,
                "forward_induction needs a normalized instance");
  }
  const int T = instance.horizon();
  if (static_cast<int>(dp.stages.size()) != T) {
    throw Error(ErrorKind::kInvalidInput, "dp solution horizon mismatch");
  }
  const double target = dp.value;
  const double tol = objective_tolerance(target);

  PolicyBundle bundle;
  AffineExpr theta1(0.0, 0);
  AffineExpr theta2(instance.x1, 0);
  bundle.x.push_back(theta2);

  for (int k = 1; k <= T; ++k) {
    const Stage& s = instance.stages[k - 1];
    const DpStage& d = dp.stages[k - 1];
    StageCertificate cert;

    const Zonogon theta = Zonogon::from_affine_pair(theta1, theta2);
    ControllerResult ctrl =
        algorithm1(theta, {s.c, s.L, s.U, d.y_low, d.y_up});
    const AffineExpr& q = ctrl.q;
    cert.range_low = q.min_over_box();
    cert.range_up = q.max_over_box();
    if (std::isfinite(s.L) && cert.range_low < s.L - 1e-9 * (1.0 + std::abs(s.L))) {
      certificate_failure(k, "control below L", cert.range_low, s.L);
    }
    if (std::isfinite(s.U) && cert.range_up > s.U + 1e-9 * (1.0 + std::abs(s.U))) {
      certificate_failure(k, "control above U", cert.range_up, s.U);
    }

    AffineExpr gamma1 = theta1 + s.c * q;
    AffineExpr gamma2 = theta2 + q;
    cert.controller_objective =
        max_affine_plus_convex(Zonogon::from_affine_pair(gamma1, gamma2), d.g)
            .value;
    if (std::abs(cert.controller_objective - target) > tol) {
      certificate_failure(k, "controller objective", cert.controller_objective,
                          target);
    }

    AffineExpr pi1 = gamma1.extended(k);
    AffineExpr pi2 = gamma2.extended(k);
    pi2.constant += s.w_low;
    pi2.coeffs[k - 1] = s.w_up - s.w_low;
    CostResult cost = algorithm2(pi1, pi2, s.h);

    cert.domination_slack = kInf;
    for (const AffinePiece& piece : s.h.pieces()) {
      AffineExpr gap = cost.z - piece.slope * pi2;
      gap += -piece.intercept;
      cert.domination_slack = std::min(cert.domination_slack, gap.min_over_box());
    }
    double scale = std::abs(cost.z.constant);
    for (double c : cost.z.coeffs) scale += std::abs(c);
    if (cert.domination_slack < -1e-9 * (1.0 + scale)) {
      certificate_failure(k, "stage cost domination", cert.domination_slack, 0.0);
    }

    theta1 = pi1 + cost.z;
    theta2 = pi2;
    cert.cost_objective =
        max_affine_plus_convex(Zonogon::from_affine_pair(theta1, theta2),
                               dp.cost_to_go(k + 1))
            .value;
    if (std::abs(cert.cost_objective - target) > tol) {
      certificate_failure(k, "stage cost objective", cert.cost_objective, target);
    }

    bundle.q.push_back(q);
    bundle.z.push_back(cost.z);
    bundle.x.push_back(theta2);
    bundle.cases.push_back(std::move(ctrl.analysis));
    bundle.certificates.push_back(cert);
  }
  bundle.value = theta1.max_over_box();
  if (std::abs(bundle.value - target) > tol) {
    certificate_failure(T, "final objective", bundle.value, target);
  }
  return bundle;
}

}  // namespace robctl
