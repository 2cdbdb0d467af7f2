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

#include "robctl/pwa.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robctl/error.h"

namespace robctl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Abscissa where two non-parallel pieces cross.
double crossing(const AffinePiece& p, const AffinePiece& q) {
  return (p.intercept - q.intercept) / (q.slope - p.slope);
}

// True when `mid` never strictly exceeds max(lo, hi), slopes lo < mid < hi.
bool is_redundant(const AffinePiece& lo, const AffinePiece& mid,
                  const AffinePiece& hi) {
  const double x = crossing(lo, hi);
  const double envelope = lo(x);
  return mid(x) <= envelope + kDominanceTol * (1.0 + std::abs(envelope));
}

}  // namespace

PwaConvex::PwaConvex() : pieces_{{0.0, 0.0}} {}

PwaConvex PwaConvex::canonicalize(std::vector<AffinePiece> pieces) {
  if (pieces.empty()) {
    throw Error(ErrorKind::kInvalidInput, "piecewise-affine function needs at least one piece");
  }
  for (const AffinePiece& p : pieces) {
    if (!std::isfinite(p.slope) || !std::isfinite(p.intercept)) {
      throw Error(ErrorKind::kInvalidInput, "non-finite piece coefficient");
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const AffinePiece& a, const AffinePiece& b) {
              if (a.slope != b.slope) return a.slope < b.slope;
              return a.intercept > b.intercept;
            });

  // Collapse (near-)parallel pieces onto the highest one.
  std::vector<AffinePiece> distinct;
  distinct.reserve(pieces.size());
  for (const AffinePiece& p : pieces) {
    if (!distinct.empty() &&
        p.slope - distinct.back().slope <= kSlopeTol) {
      if (p.intercept > distinct.back().intercept) distinct.back() = p;
      continue;
    }
    distinct.push_back(p);
  }

  std::vector<AffinePiece> hull;
  hull.reserve(distinct.size());
  for (const AffinePiece& p : distinct) {
    while (hull.size() >= 2 &&
           is_redundant(hull[hull.size() - 2], hull.back(), p)) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return PwaConvex(std::move(hull));
}

PwaConvex PwaConvex::affine(double slope, double intercept) {
  return canonicalize({{slope, intercept}});
}

double PwaConvex::eval(double x) const {
  double best = -kInf;
  for (const AffinePiece& p : pieces_) best = std::max(best, p(x));
  return best;
}

std::vector<double> PwaConvex::breakpoints() const {
  std::vector<double> out;
  out.reserve(pieces_.size());
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    out.push_back(crossing(pieces_[i], pieces_[i + 1]));
  }
  return out;
}

bool PwaConvex::is_coercive() const {
  return min_slope() < -kSlopeTol && max_slope() > kSlopeTol;
}

std::pair<double, double> PwaConvex::subdifferential(double x) const {
  const double v = eval(x);
  const double tol = kDominanceTol * (1.0 + std::abs(v));
  double left = kInf;
  double right = -kInf;
  for (const AffinePiece& p : pieces_) {
    if (p(x) >= v - tol) {
      left = std::min(left, p.slope);
      right = std::max(right, p.slope);
    }
  }
  return {left, right};
}

PwaConvex PwaConvex::shift(double d) const {
  std::vector<AffinePiece> out = pieces_;
  for (AffinePiece& p : out) p.intercept += p.slope * d;
  return canonicalize(std::move(out));
}

PwaConvex PwaConvex::scale_argument(double s) const {
  if (!(s > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "argument scale must be positive");
  }
  std::vector<AffinePiece> out = pieces_;
  for (AffinePiece& p : out) p.slope *= s;
  return canonicalize(std::move(out));
}

PwaConvex PwaConvex::scale_value(double s) const {
  if (!(s >= 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "value scale must be non-negative");
  }
  std::vector<AffinePiece> out = pieces_;
  for (AffinePiece& p : out) {
    p.slope *= s;
    p.intercept *= s;
  }
  return canonicalize(std::move(out));
}

PwaConvex PwaConvex::add_affine(double slope, double intercept) const {
  std::vector<AffinePiece> out = pieces_;
  for (AffinePiece& p : out) {
    p.slope += slope;
    p.intercept += intercept;
  }
  return canonicalize(std::move(out));
}

PwaConvex max_of(const PwaConvex& f, const PwaConvex& g) {
  std::vector<AffinePiece> all = f.pieces();
  all.insert(all.end(), g.pieces().begin(), g.pieces().end());
  return PwaConvex::canonicalize(std::move(all));
}

PwaConvex add(const PwaConvex& f, const PwaConvex& g) {
  // Walk the merged breakpoint sequence; on each cell the sum is the sum of
  // the two active pieces.
  const std::vector<double> bf = f.breakpoints();
  const std::vector<double> bg = g.breakpoints();
  std::vector<AffinePiece> out;
  out.reserve(f.pieces().size() + g.pieces().size());
  size_t i = 0;
  size_t j = 0;
  while (true) {
    const AffinePiece& p = f.pieces()[i];
    const AffinePiece& q = g.pieces()[j];
    out.push_back({p.slope + q.slope, p.intercept + q.intercept});
    const double nf = i < bf.size() ? bf[i] : kInf;
    const double ng = j < bg.size() ? bg[j] : kInf;
    if (nf == kInf && ng == kInf) break;
    if (nf <= ng) ++i;
    if (ng <= nf) ++j;
  }
  return PwaConvex::canonicalize(std::move(out));
}

MinimizerInterval argmin_interval(const PwaConvex& f) {
  if (!f.is_coercive()) {
    throw Error(ErrorKind::kInvalidInput, "unbounded minimizer set");
  }
  const std::vector<AffinePiece>& ps = f.pieces();
  const std::vector<double> bp = f.breakpoints();
  for (size_t j = 0; j < ps.size(); ++j) {
    if (std::abs(ps[j].slope) <= kSlopeTol) return {bp[j - 1], bp[j]};
    if (ps[j].slope > kSlopeTol) return {bp[j - 1], bp[j - 1]};
  }
  throw Error(ErrorKind::kInternal, "argmin_interval: no sign change");
}

PartialMin partial_min_box(const PwaConvex& f, double c, double lower,
                           double upper) {
  if (lower > upper) {
    throw Error(ErrorKind::kInvalidInput, "control bounds with L > U");
  }
  const PwaConvex phi = f.add_affine(c, 0.0);
  const std::vector<AffinePiece>& ps = phi.pieces();
  const std::vector<double> bp = phi.breakpoints();
  const int n = phi.size();

  int flat = -1;
  bool has_neg = false;
  bool has_pos = false;
  for (int j = 0; j < n; ++j) {
    if (ps[j].slope < -kSlopeTol) {
      has_neg = true;
    } else if (ps[j].slope > kSlopeTol) {
      has_pos = true;
    } else {
      flat = j;
    }
  }
  const bool attained = flat >= 0 || (has_neg && has_pos);

  double y_low;
  double y_up;
  if (has_neg && has_pos) {
    const MinimizerInterval m = argmin_interval(phi);
    y_low = m.low;
    y_up = m.up;
  } else if (!has_neg && !has_pos) {
    y_low = -kInf;
    y_up = kInf;
  } else if (!has_neg) {
    if (!attained && lower == -kInf) {
      throw Error(ErrorKind::kUnbounded, "unbounded minimizer set");
    }
    y_low = -kInf;
    y_up = attained ? bp[0] : -kInf;
  } else {
    if (!attained && upper == kInf) {
      throw Error(ErrorKind::kUnbounded, "unbounded minimizer set");
    }
    y_up = kInf;
    y_low = attained ? bp[n - 2] : kInf;
  }

  // min over the window [x + L, x + U] of phi, written as a max of affines:
  // decreasing pieces read at x + U, the minimum value, increasing pieces
  // read at x + L.
  std::vector<AffinePiece> psi;
  for (const AffinePiece& p : ps) {
    if (p.slope < -kSlopeTol && upper != kInf) {
      psi.push_back({p.slope, p.intercept + p.slope * upper});
    } else if (p.slope > kSlopeTol && lower != -kInf) {
      psi.push_back({p.slope, p.intercept + p.slope * lower});
    }
  }
  if (attained) {
    const double vmin = flat >= 0 ? ps[flat].intercept
                                        : phi.eval(y_low);
    psi.push_back({0.0, vmin});
  }
  const PwaConvex value = PwaConvex::canonicalize(std::move(psi)).add_affine(-c, 0.0);
  return {value, y_low, y_up};
}

}  // namespace robctl
