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

#include "robctl/zonogon.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "robctl/error.h"

namespace robctl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  double a;
  double b;
  int coord;
  bool flipped;
  double ratio() const { return a / b; }
};

bool same_ratio(double r0, double r) {
  return std::abs(r - r0) <= kRatioMergeTol * std::max(1.0, std::abs(r0));
}

// Orientation of (p, q, r) in the (theta2, theta1) frame.
double cross_yx(Point2 p, Point2 q, Point2 r) {
  return (q.y - p.y) * (r.x - p.x) - (q.x - p.x) * (r.y - p.y);
}

}  // namespace

Zonogon Zonogon::from_affine_pair(const AffineExpr& theta1,
                                  const AffineExpr& theta2) {
  if (theta1.order() != theta2.order()) {
    throw Error(ErrorKind::kInvalidInput, "zonogon: affine pair orders differ");
  }
  Zonogon z;
  const int m = theta1.order();
  z.offset_ = {theta1.constant, theta2.constant};
  z.coord_map_.assign(m, CoordRole{});

  std::vector<Candidate> cand;
  for (int i = 0; i < m; ++i) {
    double a = theta1.coeffs[i];
    double b = theta2.coeffs[i];
    CoordRole& role = z.coord_map_[i];
    if (std::abs(a) <= kGeneratorTol && std::abs(b) <= kGeneratorTol) {
      role.kind = CoordRole::kDropped;
      continue;
    }
    if (b < -kGeneratorTol) {
      z.offset_ = z.offset_ + Point2{a, b};
      a = -a;
      b = -b;
      role.flipped = true;
    }
    if (b <= kGeneratorTol) {
      role.kind = CoordRole::kFolded;
      role.fixed = a > 0.0 ? 1.0 : 0.0;
      z.offset_ = z.offset_ + Point2{a * role.fixed, b * role.fixed};
      continue;
    }
    cand.push_back({a, b, i, role.flipped});
  }
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Candidate& l, const Candidate& r) {
                     return l.ratio() > r.ratio();
                   });

  size_t i = 0;
  while (i < cand.size()) {
    size_t j = i;
    Point2 sum;
    while (j < cand.size() && same_ratio(cand[i].ratio(), cand[j].ratio())) {
      sum = sum + Point2{cand[j].a, cand[j].b};
      ++j;
    }
    const int g = z.size();
    for (size_t t = i; t < j; ++t) {
      CoordRole& role = z.coord_map_[cand[t].coord];
      role.kind = CoordRole::kGenerator;
      role.generator = g;
      role.weight = cand[t].b / sum.y;
    }
    z.generators_.push_back(sum);
    i = j;
  }
  return z;
}

Zonogon Zonogon::from_generators(Point2 offset,
                                 std::vector<Point2> generators) {
  Zonogon z;
  z.offset_ = offset;
  z.generators_ = std::move(generators);
  z.coord_map_.resize(z.generators_.size());
  for (int j = 0; j < z.size(); ++j) {
    z.coord_map_[j].kind = CoordRole::kGenerator;
    z.coord_map_[j].generator = j;
    z.coord_map_[j].weight = 1.0;
  }
  return z;
}

Point2 Zonogon::center() const {
  Point2 c = offset_;
  for (const Point2& g : generators_) c = c + Point2{0.5 * g.x, 0.5 * g.y};
  return c;
}

std::vector<Point2> Zonogon::right_side() const {
  std::vector<Point2> v{offset_};
  v.reserve(generators_.size() + 1);
  for (const Point2& g : generators_) v.push_back(v.back() + g);
  return v;
}

std::vector<Point2> Zonogon::vertices() const {
  std::vector<Point2> v = right_side();
  const int p = size();
  if (p < 2) {
    if (p == 1) v.resize(2);
    else v.resize(1);
    return v;
  }
  const Point2 c2 = {2.0 * center().x, 2.0 * center().y};
  for (int i = 1; i < p; ++i) v.push_back(c2 - v[i]);
  return v;
}

std::vector<double> Zonogon::preimage(int i) const {
  std::vector<double> w(order(), 0.0);
  for (int c = 0; c < order(); ++c) {
    const CoordRole& role = coord_map_[c];
    switch (role.kind) {
      case CoordRole::kDropped:
        break;
      case CoordRole::kFolded:
        w[c] = role.fixed;
        break;
      case CoordRole::kGenerator: {
        const double canon = role.generator < i ? 1.0 : 0.0;
        w[c] = role.flipped ? 1.0 - canon : canon;
        break;
      }
    }
  }
  return w;
}

AffineExpr Zonogon::pull_back(const std::vector<double>& f) const {
  if (static_cast<int>(f.size()) != size() + 1) {
    throw Error(ErrorKind::kInternal, "pull_back: coefficient count mismatch");
  }
  AffineExpr out(f[0], order());
  for (int c = 0; c < order(); ++c) {
    const CoordRole& role = coord_map_[c];
    if (role.kind != CoordRole::kGenerator) continue;
    const double share = f[role.generator + 1] * role.weight;
    if (role.flipped) {
      out.constant += share;
      out.coeffs[c] = -share;
    } else {
      out.coeffs[c] = share;
    }
  }
  return out;
}

double cotan(Point2 m, Point2 n) {
  const double dx = n.x - m.x;
  const double dy = n.y - m.y;
  if (dy == 0.0) return dx >= 0.0 ? kInf : -kInf;
  return dx / dy;
}

std::vector<int> right_side_indices(const std::vector<Point2>& points) {
  if (points.empty()) {
    throw Error(ErrorKind::kInvalidInput, "right side of an empty point set");
  }
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    if (points[l].y != points[r].y) return points[l].y < points[r].y;
    return points[l].x > points[r].x;
  });
  // Upper hull in the (theta2, theta1) frame, one point per theta2 value.
  std::vector<int> chain;
  for (size_t k = 0; k < order.size(); ++k) {
    const int idx = order[k];
    if (k > 0 && points[order[k - 1]].y == points[idx].y) continue;
    while (chain.size() >= 2 &&
           cross_yx(points[chain[chain.size() - 2]], points[chain.back()],
                    points[idx]) >= 0.0) {
      chain.pop_back();
    }
    chain.push_back(idx);
  }
  return chain;
}

Zonogon zonogon_hull(const std::vector<Point2>& points) {
  const std::vector<int> chain = right_side_indices(points);
  std::vector<Point2> gens;
  for (size_t i = 1; i < chain.size(); ++i) {
    gens.push_back(points[chain[i]] - points[chain[i - 1]]);
  }
  return Zonogon::from_generators(points[chain[0]], std::move(gens));
}

ZonogonMax max_affine_plus_convex(const Zonogon& z, const PwaConvex& f) {
  const std::vector<Point2> v = z.right_side();
  ZonogonMax best{-kInf, -1, {}};
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    const double val = v[i].x + f.eval(v[i].y);
    if (val > best.value) best = {val, i, v[i]};
  }
  return best;
}

}  // namespace robctl
