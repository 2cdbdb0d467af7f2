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
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "random_instance.h"
#include "robctl/dp.h"
#include "robctl/error.h"
#include "robctl/instance.h"
#include "robctl/lp.h"
#include "robctl/reform.h"

namespace robctl {
namespace {

Instance abs_instance() {
  Instance inst;
  Stage s;
  s.c = 0;
  s.L = -1;
  s.U = 1;
  s.w_low = 0;
  s.w_up = 1;
  s.h = PwaConvex::canonicalize({{-1, 0}, {1, 0}});
  inst.stages.push_back(s);
  return inst;
}

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

bool same_value(double a, double b) {
  return std::isinf(b) ? a == b : std::abs(a - b) <= 1e-12 * (1 + std::abs(b));
}

double slope_at(const PwaConvex& f, double x, double e = 1e-5) {
  return (f(x + e) - f(x - e)) / (2 * e);
}

TEST_CASE("one stage with absolute cost") {
  Instance inst = abs_instance();
  DpSolution sol = solve_dp(inst);
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.stages[0].y_low == doctest::Approx(-0.5));
  CHECK(sol.stages[0].y_up == doctest::Approx(-0.5));
  CHECK(std::abs(sol.value - testing::oracle::minmax_value(inst)) <= 1e-3);
}

TEST_CASE("one newsvendor stage") {
  Instance inst = newsvendor_stage();
  DpSolution sol = solve_dp(inst);
  CHECK(sol.value == doctest::Approx(484.5176).epsilon(1e-7));
  CHECK(policy_eval(sol, inst, 1, 0.0) == doctest::Approx(1056 / 42.5).epsilon(1e-12));
  CHECK(std::abs(sol.value - testing::oracle::minmax_value(inst)) <= 1e-3);
}

TEST_CASE("flat stage cost is rejected") {
  Instance inst = abs_instance();
  inst.stages[0].h = PwaConvex::affine(0, 0);
  CHECK_THROWS_AS(validate(inst), Error);
  CHECK_THROWS_AS(solve_dp(inst), Error);
}

TEST_CASE("non-unit dynamics are refused by solve_dp") {
  Instance inst = abs_instance();
  inst.stages[0].alpha = 2;
  CHECK_THROWS_AS(solve_dp(inst), Error);
}

TEST_CASE("cost-to-go past the horizon is zero") {
  DpSolution sol = solve_dp(abs_instance());
  CHECK(sol.cost_to_go(2) == PwaConvex());
  CHECK(sol.cost_to_go(1) == sol.stages[0].J);
}

TEST_CASE("policy_eval branches") {
  Instance inst = abs_instance();
  DpSolution sol = solve_dp(inst);
  const DpStage& st = sol.stages[0];
  CHECK(policy_eval(sol, inst, 1, st.lower_threshold - 5) == 1.0);
  CHECK(policy_eval(sol, inst, 1, st.upper_threshold + 5) == -1.0);
  CHECK(policy_eval(sol, inst, 1, 0.2) == doctest::Approx(st.y_low - 0.2));
}

TEST_CASE("deterministic stage") {
  Instance inst = abs_instance();
  inst.stages[0].w_low = inst.stages[0].w_up = 0.25;
  DpSolution sol = solve_dp(inst);
  CHECK(sol.value == doctest::Approx(0.0));
  CHECK(sol.stages[0].g == inst.stages[0].h.shift(0.25));
}

TEST_CASE("oracle equivalence for short horizons") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 20; ++n) {
    Instance inst = testing::random_unit_instance(rng, testing::uniform_int(rng, 1, 3));
    DpSolution sol = solve_dp(inst);
    const double ref = testing::oracle::minmax_value(inst);
    INFO("instance " << n);
    REQUIRE(std::abs(sol.value - ref) <= 1e-3);
  }
}

TEST_CASE("policy and value structure") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 60; ++n) {
    Instance inst = testing::random_unit_instance(rng, testing::uniform_int(rng, 1, 5));
    DpSolution sol = solve_dp(inst);
    for (int k = 1; k <= inst.horizon(); ++k) {
      const Stage& s = inst.stages[k - 1];
      const DpStage& st = sol.stages[k - 1];
      // An infinite end appears when c y + g(y) is monotone.
      CHECK(same_value(st.lower_threshold, st.y_low - s.U));
      CHECK(same_value(st.upper_threshold, st.y_up - s.L));
      // Three pieces: U, then y_low - x, then L.
      for (int i = 0; i <= 400; ++i) {
        const double x = -100 + 0.5 * i;
        const double u = policy_eval(sol, inst, k, x);
        if (x <= st.lower_threshold) REQUIRE(u == s.U);
        if (x >= st.y_low - s.L) REQUIRE(u == s.L);
        if (x > st.lower_threshold && x < st.y_low - s.L) {
          REQUIRE(u == doctest::Approx(st.y_low - x));
        }
      }
      // 0 <= u(a) - u(b) <= b - a for a <= b.
      for (int i = 0; i < 100; ++i) {
        auto [a, b] = testing::sorted_pair(rng, -60, 60);
        const double d = policy_eval(sol, inst, k, a) - policy_eval(sol, inst, k, b);
        REQUIRE(d >= -1e-12);
        REQUIRE(d <= b - a + 1e-12);
      }
      // Slope bands of J and g.
      const double c = s.c;
      const double mid_lo = st.lower_threshold;
      const double mid_hi = st.upper_threshold;
      if (std::isfinite(mid_hi - mid_lo) && mid_hi - mid_lo > 1e-3) {
        REQUIRE(slope_at(st.J, 0.5 * (mid_lo + mid_hi)) == doctest::Approx(-c).epsilon(1e-6));
      }
      for (double off : {0.5, 3.0, 11.0}) {
        if (std::isfinite(mid_lo)) {
          REQUIRE(slope_at(st.J, mid_lo - off) <= -c + 1e-6);
          REQUIRE(slope_at(st.g, st.y_low - off) <= -c + 1e-6);
        }
        if (std::isfinite(mid_hi)) {
          REQUIRE(slope_at(st.J, mid_hi + off) >= -c - 1e-6);
          REQUIRE(slope_at(st.g, st.y_up + off) >= -c - 1e-6);
        }
      }
      for (int i = 0; i + 2 <= 200; ++i) {
        const double x = -100 + i;
        REQUIRE(st.J(x + 1) <= 0.5 * (st.J(x) + st.J(x + 2)) + 1e-9 * (1 + std::abs(st.J(x + 1))));
        REQUIRE(st.g(x + 1) <= 0.5 * (st.g(x) + st.g(x + 2)) + 1e-9 * (1 + std::abs(st.g(x + 1))));
      }
    }
    // Rolling the optimal policy forward never exceeds the value.
    const double roll = testing::oracle::rollout_worst_case(
        inst, [&](int k, double x) { return policy_eval(sol, inst, k, x); });
    REQUIRE(roll <= sol.value + 1e-7 * (1 + std::abs(sol.value)));
    REQUIRE(roll >= sol.value - 1e-7 * (1 + std::abs(sol.value)));
  }
}

TEST_CASE("normalize leaves unit dynamics alone") {
  Instance inst = abs_instance();
  NormalizedInstance n = normalize(inst);
  CHECK(n.record.is_identity());
  CHECK(n.instance == inst);
}

TEST_CASE("normalize flips a negative disturbance gain") {
  Instance inst = abs_instance();
  inst.stages[0].gamma = -1;
  inst.stages[0].w_low = 9;
  inst.stages[0].w_up = 11;
  NormalizedInstance n = normalize(inst);
  CHECK(n.instance.stages[0].w_low == -11);
  CHECK(n.instance.stages[0].w_up == -9);
  CHECK(n.record.stages[0].disturbance_scale == -1);
  CHECK(solve_dp(n.instance).value ==
        doctest::Approx(solve(build_scenario_exact(inst, false)).objective).epsilon(1e-9));
}

TEST_CASE("normalize scales controls and costs by the state growth") {
  Instance inst = abs_instance();
  inst.stages.push_back(inst.stages[0]);
  inst.stages[0].alpha = 2;
  inst.stages[1].c = 0.5;
  inst.x1 = 0.3;
  NormalizedInstance n = normalize(inst);
  CHECK(n.instance.stages[1].L == inst.stages[1].L / 2);
  CHECK(n.instance.stages[1].U == inst.stages[1].U / 2);
  CHECK(n.instance.stages[1].c == inst.stages[1].c * 2);
  CHECK(n.record.state_to_raw(3, 1.5) == 3.0);
  const double raw = solve(build_scenario_exact(inst, false)).objective;
  CHECK(solve_dp(n.instance).value == doctest::Approx(raw).epsilon(1e-9));
}

TEST_CASE("normalized value matches the raw scenario oracle") {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 30; ++n) {
    Instance inst = testing::random_unit_instance(rng, testing::uniform_int(rng, 1, 4));
    for (Stage& s : inst.stages) {
      s.alpha = testing::uniform(rng, 0.5, 2.0);
      s.beta = testing::uniform(rng, 0.5, 2.0);
      s.gamma = testing::uniform(rng, -2.0, 2.0);
      if (std::abs(s.gamma) < 0.1) s.gamma = 1.0;
    }
    NormalizedInstance norm = normalize(inst);
    const double dp = solve_dp(norm.instance).value;
    LpSolution lp = solve(build_scenario_exact(inst, false));
    REQUIRE(lp.status == LpStatus::kOptimal);
    REQUIRE(std::abs(dp - lp.objective) <= 1e-6 * (1 + std::abs(dp)));
  }
}

TEST_CASE("validate names the offending field") {
  Instance inst = abs_instance();
  inst.stages[0].L = 2;
  CHECK_THROWS_WITH_AS(validate(inst), doctest::Contains("stage 1"), Error);
  inst = abs_instance();
  inst.stages[0].gamma = 0;
  CHECK_THROWS_AS(normalize(inst), Error);
  inst = abs_instance();
  inst.stages[0].beta = -1;
  CHECK_THROWS_AS(normalize(inst), Error);
}

}  // namespace
}  // namespace robctl
