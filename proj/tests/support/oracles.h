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

#ifndef ROBCTL_TESTS_SUPPORT_ORACLES_H_
#define ROBCTL_TESTS_SUPPORT_ORACLES_H_

// Brute-force reference computations. None of them call into the code
// under test except for plain data types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "robctl/affine.h"
#include "robctl/instance.h"
#include "robctl/pwa.h"
#include "robctl/zonogon.h"

namespace robctl::testing::oracle {

inline double max_of_pieces(const std::vector<AffinePiece>& pieces, double x) {
  double v = -std::numeric_limits<double>::infinity();
  for (const AffinePiece& p : pieces) v = std::max(v, p.slope * x + p.intercept);
  return v;
}

// Bit i of mask selects w_{i+1} = 1.
inline std::vector<double> cube_vertex(int order, unsigned long mask) {
  std::vector<double> w(order);
  for (int i = 0; i < order; ++i) w[i] = (mask >> i) & 1UL ? 1.0 : 0.0;
  return w;
}

inline double eval_affine(const AffineExpr& e, const std::vector<double>& w) {
  double v = e.constant;
  for (int i = 0; i < e.order(); ++i) v += e.coeffs[i] * w[i];
  return v;
}

inline std::vector<Point2> cube_images(const AffineExpr& t1,
                                       const AffineExpr& t2) {
  const int k = std::max(t1.order(), t2.order());
  std::vector<Point2> out;
  for (unsigned long m = 0; m < (1UL << k); ++m) {
    std::vector<double> w = cube_vertex(k, m);
    double x = t1.constant;
    double y = t2.constant;
    for (int i = 0; i < k; ++i) {
      x += t1.coeff(i + 1) * w[i];
      y += t2.coeff(i + 1) * w[i];
    }
    out.push_back({x, y});
  }
  return out;
}

inline double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; counter-clockwise, collinear points removed.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= eps) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

// Hull vertices from the rightmost lowest to the rightmost highest point,
// walking counter-clockwise.
inline std::vector<Point2> right_side(const std::vector<Point2>& pts,
                                      double eps) {
  std::vector<Point2> h = convex_hull(pts, eps);
  if (h.size() == 1) return h;
  auto lower = [&](Point2 a, Point2 b) {
    return a.y < b.y - eps || (std::abs(a.y - b.y) <= eps && a.x > b.x);
  };
  size_t start = 0;
  size_t stop = 0;
  for (size_t i = 1; i < h.size(); ++i) {
    if (lower(h[i], h[start])) start = i;
    if (lower(h[stop], h[i])) stop = i;
  }
  // stop must be the rightmost of the highest points.
  for (size_t i = 0; i < h.size(); ++i) {
    if (std::abs(h[i].y - h[stop].y) <= eps && h[i].x > h[stop].x) stop = i;
  }
  std::vector<Point2> out;
  for (size_t i = start;; i = (i + 1) % h.size()) {
    out.push_back(h[i]);
    if (i == stop) break;
  }
  return out;
}

// min c'x over {A x (rel) b, lo <= x <= hi} for n <= 3 by enumerating
// every basic solution. Bounds must be finite. nullopt when infeasible.
struct DenseLp {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<int> rel;  // -1: <=, 0: =, 1: >=
  std::vector<double> b;
  std::vector<double> lo;
  std::vector<double> hi;
};

inline bool solve_square(std::vector<std::vector<double>> m,
                         std::vector<double> r, std::vector<double>* x) {
  const int n = static_cast<int>(r.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i) {
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    }
    if (std::abs(m[piv][col]) < 1e-10) return false;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = m[i][col] / m[col][col];
      for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  x->resize(n);
  for (int i = 0; i < n; ++i) (*x)[i] = r[i] / m[i][i];
  return true;
}

inline std::optional<double> enumerate_basic_solutions(const DenseLp& lp) {
  const int n = static_cast<int>(lp.c.size());
  std::vector<std::vector<double>> rows = lp.a;
  std::vector<double> rhs = lp.b;
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(lp.lo[j]);
    rows.push_back(e);
    rhs.push_back(lp.hi[j]);
  }
  const int total = static_cast<int>(rows.size());
  std::optional<double> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int depth, int from) {
    if (depth == n) {
      std::vector<std::vector<double>> m;
      std::vector<double> r;
      for (int i : pick) {
        m.push_back(rows[i]);
        r.push_back(rhs[i]);
      }
      std::vector<double> x;
      if (!solve_square(m, r, &x)) return;
      const double tol = 1e-9;
      for (int j = 0; j < n; ++j) {
        if (x[j] < lp.lo[j] - tol * (1 + std::abs(lp.lo[j])) ||
            x[j] > lp.hi[j] + tol * (1 + std::abs(lp.hi[j]))) {
          return;
        }
      }
      for (size_t i = 0; i < lp.a.size(); ++i) {
        double v = 0.0;
        for (int j = 0; j < n; ++j) v += lp.a[i][j] * x[j];
        const double slack = tol * (1 + std::abs(lp.b[i]));
        if (lp.rel[i] <= 0 && v > lp.b[i] + slack) return;
        if (lp.rel[i] >= 0 && v < lp.b[i] - slack) return;
      }
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += lp.c[j] * x[j];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (int i = from; i < total; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

// Minimizer of a convex f on [lo, hi] by golden-section search.
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, int iterations = 60) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations && b - a > 1e-13 * (1 + std::abs(a)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min({f(lo), f(hi), f1, f2});
}

// Exhaustive min-max value of a unit-dynamics instance with bounded
// controls: the first control is scanned on a 1e-3 (U - L) grid and the
// best cell refined; later controls minimize a convex function of u and
// use golden-section search. Disturbances range over interval endpoints.
inline double minmax_value(const Instance& inst) {
  std::function<double(int, double)> value = [&](int k, double x) -> double {
    if (k >= inst.horizon()) return 0.0;
    const Stage& s = inst.stages[k];
    auto stage = [&, k, x](double u) {
      double worst = -std::numeric_limits<double>::infinity();
      for (double w : {s.w_low, s.w_up}) {
        const double y = x + u + w;
        worst = std::max(worst, s.c * u + max_of_pieces(s.h.pieces(), y) +
                                    value(k + 1, y));
      }
      return worst;
    };
    if (s.U - s.L <= 0.0) return stage(s.L);
    return golden_min(stage, s.L, s.U);
  };
  const Stage& s = inst.stages[0];
  auto top = [&](double u) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double w : {s.w_low, s.w_up}) {
      const double y = inst.x1 + u + w;
      worst = std::max(worst, s.c * u + max_of_pieces(s.h.pieces(), y) +
                                  value(1, y));
    }
    return worst;
  };
  if (s.U - s.L <= 0.0) return top(s.L);
  const double step = 1e-3 * (s.U - s.L);
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = top(s.L + step * i);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  const double a = s.L + step * std::max(0, best_i - 1);
  const double b = s.L + step * std::min(1000, best_i + 1);
  return std::min(best, golden_min(top, a, b));
}

// Worst case over all 2^T endpoint sequences of a state-feedback policy on
// a unit-dynamics instance.
inline double rollout_worst_case(
    const Instance& inst, const std::function<double(int, double)>& policy) {
  const int T = inst.horizon();
  double worst = -std::numeric_limits<double>::infinity();
  for (unsigned long m = 0; m < (1UL << T); ++m) {
    double x = inst.x1;
    double cost = 0.0;
    for (int k = 0; k < T; ++k) {
      const Stage& s = inst.stages[k];
      const double u = policy(k + 1, x);
      const double w = (m >> k) & 1UL ? s.w_up : s.w_low;
      x = x + u + w;
      cost += s.c * u + max_of_pieces(s.h.pieces(), x);
    }
    worst = std::max(worst, cost);
  }
  return worst;
}

}  // namespace robctl::testing::oracle

#endif  // ROBCTL_TESTS_SUPPORT_ORACLES_H_
