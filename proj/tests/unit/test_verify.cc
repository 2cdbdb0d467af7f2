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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "random_instance.h"
#include "robctl/construct.h"
#include "robctl/dp.h"
#include "robctl/error.h"
#include "robctl/verify.h"

namespace robctl {
namespace {

namespace oracle = testing::oracle;

Instance newsvendor_stage() {
  Instance inst;
  Stage s;
  s.c = 1;
  s.L = 0;
  s.U = 1000;
  s.w_low = -44;
  s.w_up = 0;
  s.h = PwaConvex::canonicalize({{18.5, 0}, {-24, 0}});
  inst.stages.push_back(s);
  return inst;
}

// Cost of a bundle along one vertex sequence (bits[k] picks w_up).
double bundle_cost(const PolicyBundle& b, const Instance& inst,
                   const std::vector<int>& bits, CostMode mode) {
  std::vector<double> omega(bits.begin(), bits.end());
  double x = inst.x1;
  double total = 0.0;
  for (int k = 0; k < inst.horizon(); ++k) {
    const Stage& s = inst.stages[k];
    std::vector<double> prefix(omega.begin(), omega.begin() + k);
    const double u = oracle::eval_affine(b.q[k], prefix);
    x += u + (bits[k] ? s.w_up : s.w_low);
    std::vector<double> upto(omega.begin(), omega.begin() + k + 1);
    total += s.c * u + (mode == CostMode::kConvex ? s.h(x) : oracle::eval_affine(b.z[k], upto));
  }
  return total;
}

TEST_CASE("constant policy on one newsvendor stage") {
  Instance inst = newsvendor_stage();
  WorstCase wc = worst_case_policy(inst, [](int, double) { return 24.847; });
  const double low = 24.847 + 24 * (44 - 24.847);
  const double up = 24.847 + 18.5 * 24.847;
  CHECK(wc.value == doctest::Approx(std::max(low, up)).epsilon(1e-12));
  CHECK(std::abs(wc.value - 484.52) <= 0.01);
}

TEST_CASE("zero uncertainty is one scenario") {
  std::mt19937_64 rng(101);
  Instance inst = testing::random_unit_instance(rng, 3);
  for (Stage& s : inst.stages) s.w_up = s.w_low;
  auto policy = [](int k, double x) { return 0.1 * k - 0.05 * x; };
  double x = inst.x1;
  double cost = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const Stage& s = inst.stages[k - 1];
    const double u = policy(k, x);
    x += u + s.w_low;
    cost += s.c * u + s.h(x);
  }
  CHECK(worst_case_policy(inst, policy).value == doctest::Approx(cost).epsilon(1e-12));
}

TEST_CASE("dynamic programming policy rollout") {
  std::mt19937_64 rng(103);
  for (int n = 0; n < 30; ++n) {
    Instance inst = testing::random_unit_instance(rng, testing::uniform_int(rng, 1, 6));
    DpSolution dp = solve_dp(inst);
    auto policy = [&](int k, double x) { return policy_eval(dp, inst, k, x); };
    const double v = worst_case_policy(inst, policy).value;
    REQUIRE(v <= dp.value + 1e-7 * (1 + std::abs(dp.value)));
    REQUIRE(v == doctest::Approx(oracle::rollout_worst_case(inst, policy)).epsilon(1e-12));
  }
}

TEST_CASE("first maximizer in lexicographic order") {
  Instance inst;
  for (int k = 0; k < 2; ++k) {
    Stage s;
    s.L = -1;
    s.U = 1;
    s.w_low = -1;
    s.w_up = 1;
    s.h = PwaConvex::canonicalize({{-1, 0}, {1, 0}});
    inst.stages.push_back(s);
  }
  WorstCase wc = worst_case_policy(inst, [](int, double) { return 0.0; });
  CHECK(wc.value == 3.0);
  CHECK(wc.vertex == std::vector<int>{0, 0});
}

TEST_CASE("enumeration horizon cap") {
  std::mt19937_64 rng(107);
  Instance inst = testing::random_unit_instance(rng, kMaxEnumerationHorizon + 1);
  try {
    worst_case_policy(inst, [](int, double) { return 0.0; });
    FAIL("expected a capability error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapability);
  }
}

TEST_CASE("check_affine_range") {
  CHECK(check_affine_range(AffineExpr(0.5, std::vector<double>{-0.2, -0.3}), 0, 1));
  CHECK_FALSE(check_affine_range(AffineExpr(1.5, 0), 0, 1));
  CHECK_FALSE(check_affine_range(AffineExpr(0.5, std::vector<double>{-0.2, -0.31}), 0, 1));

  std::mt19937_64 rng(109);
  for (int n = 0; n < 300; ++n) {
    const int k = testing::uniform_int(rng, 0, 8);
    AffineExpr e(testing::uniform(rng, -2, 2), k);
    for (double& c : e.coeffs) c = testing::uniform(rng, -1, 1);
    auto [lo, hi] = testing::sorted_pair(rng, -3, 3);
    bool inside = true;
    for (unsigned long m = 0; m < (1UL << k); ++m) {
      const double v = oracle::eval_affine(e, oracle::cube_vertex(k, m));
      inside = inside && v >= lo - kCheckSlack && v <= hi + kCheckSlack;
    }
    REQUIRE(check_affine_range(e, lo, hi) == inside);
  }
}

TEST_CASE("check_domination") {
  const AffineExpr state(-0.5, std::vector<double>{1.0});
  const PwaConvex h = PwaConvex::canonicalize({{-1, 0}, {1, 0}});
  CHECK(check_domination(AffineExpr(0.5, std::vector<double>{0.0}), h, state).ok);

  const PwaConvex lin = PwaConvex::affine(2, 1);
  DominationCheck tight = check_domination(AffineExpr(0.0, std::vector<double>{2.0}), lin, state);
  CHECK(tight.ok);
  CHECK(tight.gap == doctest::Approx(0.0));

  DominationCheck bad = check_domination(AffineExpr(0.5 - 1e-3, std::vector<double>{0.0}), h, state);
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.witness.size() == 1);
  CHECK(bad.witness[0] == 0.0);
  CHECK(bad.gap == doctest::Approx(-1e-3));

  CHECK_THROWS_AS(check_domination(AffineExpr(0.0, 2), h, state), Error);
}

TEST_CASE("corrupted bundles are caught with a witness") {
  std::mt19937_64 rng(113);
  for (int n = 0; n < 30; ++n) {
    Instance inst = testing::random_unit_instance(rng, testing::uniform_int(rng, 2, 5));
    DpSolution dp = solve_dp(inst);
    PolicyBundle b = forward_induction(inst, dp);
    const int k = testing::uniform_int(rng, 1, inst.horizon());
    const Stage& s = inst.stages[k - 1];

    PolicyBundle low_cost = b;
    low_cost.z[k - 1].constant -= 1e-3;
    DominationCheck d = check_domination(low_cost.z[k - 1], s.h, b.x[k]);
    REQUIRE_FALSE(d.ok);
    const double zv = oracle::eval_affine(low_cost.z[k - 1], d.witness);
    const double hv = s.h(oracle::eval_affine(b.x[k], d.witness));
    REQUIRE(zv < hv);

    PolicyBundle out_of_range = b;
    out_of_range.q[k - 1].constant += (s.U - s.L) + 1.0;
    REQUIRE_FALSE(check_affine_range(out_of_range.q[k - 1], s.L, s.U));

    // Raising one affine cost raises the worst case by as much; the
    // reported vertex must reproduce it.
    PolicyBundle costly = b;
    costly.z[k - 1].constant += 1.0;
    WorstCase wc = worst_case_eval(costly, inst, CostMode::kAffine);
    REQUIRE(wc.value == doctest::Approx(dp.value + 1.0).epsilon(1e-9));
    REQUIRE(bundle_cost(costly, inst, wc.vertex, CostMode::kAffine) ==
            doctest::Approx(wc.value).epsilon(1e-12));
    REQUIRE(bundle_cost(b, inst, worst_case_eval(b, inst, CostMode::kConvex).vertex,
                        CostMode::kConvex) == doctest::Approx(dp.value).epsilon(1e-7));
  }
}

}  // namespace
}  // namespace robctl
