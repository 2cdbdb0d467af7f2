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

#ifndef ROBCTL_ZONOGON_H_
#define ROBCTL_ZONOGON_H_

#include <vector>

#include "robctl/affine.h"
#include "robctl/pwa.h"

namespace robctl {

// Generators with |a| and |b| below this are dropped; b below it is folded.
inline constexpr double kGeneratorTol = 1e-12;
// Relative tolerance under which two generator ratios are merged.
inline constexpr double kRatioMergeTol = 1e-9;

struct Point2 {
  double x = 0.0;  // theta_1 axis
  double y = 0.0;  // theta_2 axis

  bool operator==(const Point2&) const = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

// What became of an original cube coordinate during canonicalization.
struct CoordRole {
  enum Kind { kGenerator, kDropped, kFolded };
  Kind kind = kDropped;
  int generator = -1;   // canonical generator index (kGenerator)
  double weight = 0.0;  // b-proportional share of a merged generator
  bool flipped = false;  // w' = 1 - w
  double fixed = 0.0;    // value the coordinate is pinned to (kFolded)
};

// offset + sum_j generators[j] * w'_j over w' in [0,1]^p, canonical: every
// b_j > 0 and a_j / b_j strictly decreasing.
class Zonogon {
 public:
  Zonogon() = default;

  // Canonical zonogon of w -> (theta1(w), theta2(w)). Flips b < 0, drops
  // null coordinates, folds horizontal ones at the theta1-maximizing end,
  // merges equal ratios.
  static Zonogon from_affine_pair(const AffineExpr& theta1,
                                  const AffineExpr& theta2);
  // Zonogon with identity coordinate map from explicit (canonical) data.
  static Zonogon from_generators(Point2 offset, std::vector<Point2> generators);

  Point2 offset() const { return offset_; }
  const std::vector<Point2>& generators() const { return generators_; }
  const std::vector<CoordRole>& coord_map() const { return coord_map_; }
  int size() const { return static_cast<int>(generators_.size()); }
  int order() const { return static_cast<int>(coord_map_.size()); }

  Point2 center() const;
  // v_0 .. v_p.
  std::vector<Point2> right_side() const;
  // All polygon vertices, counter-clockwise from v_0.
  std::vector<Point2> vertices() const;

  // An original cube point mapping onto right-side vertex v_i.
  std::vector<double> preimage(int i) const;

  // Rewrites f0 + sum_j f_j w'_j (canonical coordinates, f.size() = p+1)
  // over the original coordinates; merged generators split by weight.
  AffineExpr pull_back(const std::vector<double>& f) const;

 private:
  Point2 offset_;
  std::vector<Point2> generators_;
  std::vector<CoordRole> coord_map_;
};

// (x_N - x_M) / (y_N - y_M); +-infinity, signed by x_N - x_M, when the
// segment is horizontal.
double cotan(Point2 m, Point2 n);

// Indices of the points on the right side of their convex hull, from the
// rightmost lowest point to the rightmost highest one.
std::vector<int> right_side_indices(const std::vector<Point2>& points);

// Zonogon whose right side is the right side of conv(points).
Zonogon zonogon_hull(const std::vector<Point2>& points);

struct ZonogonMax {
  double value;
  int index;  // into right_side()
  Point2 vertex;
};

// max over the zonogon of theta1 + f(theta2); lowest index on ties.
ZonogonMax max_affine_plus_convex(const Zonogon& z, const PwaConvex& f);

}  // namespace robctl

#endif  // ROBCTL_ZONOGON_H_
