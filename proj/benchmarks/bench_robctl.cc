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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "robctl/construct.h"
#include "robctl/dp.h"
#include "robctl/lp.h"
#include "robctl/reform.h"
#include "robctl/verify.h"
#include "robctl/zonogon.h"

namespace robctl {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Newsvendor-like stages with a control box around the disturbance.
Instance instance(int T, unsigned seed) {
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.x1 = uniform(rng, -5, 5);
  for (int k = 0; k < T; ++k) {
    Stage s;
    s.c = uniform(rng, 0, 2);
    s.L = uniform(rng, -10, -1);
    s.U = uniform(rng, 1, 10);
    s.w_low = uniform(rng, -8, 0);
    s.w_up = s.w_low + uniform(rng, 0.5, 8);
    s.h = PwaConvex::canonicalize(
        {{-uniform(rng, 1, 20), 0.0}, {uniform(rng, 1, 20), 0.0}, {uniform(rng, 0, 3), 1.0}});
    inst.stages.push_back(s);
  }
  return inst;
}

void BM_SolveDp(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dp(inst).value);
}
BENCHMARK(BM_SolveDp)->Arg(4)->Arg(16)->Arg(64);

void BM_ForwardInduction(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 2);
  const DpSolution dp = solve_dp(inst);
  for (auto _ : state) benchmark::DoNotOptimize(forward_induction(inst, dp).value);
}
BENCHMARK(BM_ForwardInduction)->Arg(4)->Arg(16)->Arg(64);

void BM_ZonogonRightSide(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int k = static_cast<int>(state.range(0));
  AffineExpr t1(0.0, k);
  AffineExpr t2(0.0, k);
  for (int i = 0; i < k; ++i) {
    t1.coeffs[i] = uniform(rng, -5, 5);
    t2.coeffs[i] = uniform(rng, -5, 5);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Zonogon::from_affine_pair(t1, t2).right_side().size());
  }
}
BENCHMARK(BM_ZonogonRightSide)->Arg(8)->Arg(64)->Arg(512);

void BM_Aarc(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 4);
  const LpProblem lp = build_aarc(inst, false).lp;
  for (auto _ : state) benchmark::DoNotOptimize(solve(lp).objective);
}
BENCHMARK(BM_Aarc)->Arg(4)->Arg(8)->Arg(12);

void BM_ScenarioExact(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 5);
  const LpProblem lp = build_scenario_exact(inst, false);
  for (auto _ : state) benchmark::DoNotOptimize(solve(lp).objective);
}
BENCHMARK(BM_ScenarioExact)->Arg(3)->Arg(5)->Arg(7);

void BM_Counterexample(benchmark::State& state) {
  const Instance inst = counterexample_instance(true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(build_scenario_exact(inst, true)).objective);
    benchmark::DoNotOptimize(solve(build_affine_policy_scenario(inst, true)).objective);
    benchmark::DoNotOptimize(solve(build_aarc(inst, true).lp).objective);
  }
}
BENCHMARK(BM_Counterexample);

void BM_WorstCaseEval(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)), 6);
  const PolicyBundle b = forward_induction(inst, solve_dp(inst));
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_eval(b, inst, CostMode::kConvex).value);
}
BENCHMARK(BM_WorstCaseEval)->Arg(6)->Arg(12);

}  // namespace
}  // namespace robctl

BENCHMARK_MAIN();
