/*
 * Copyright 2026 The Scoring Bias Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <vector>

#include <benchmark/benchmark.h>

#include "scoring_bias/detector.h"
#include "scoring_bias/ecdf.h"
#include "scoring_bias/harness.h"
#include "scoring_bias/random.h"
#include "scoring_bias/synthetic.h"

namespace scoring_bias {
namespace {

std::vector<double> Normals(std::size_t n, std::uint64_t key) {
  std::vector<double> v(n);
  CounterRng(key).FillNormal(0, v);
  return v;
}

void BM_FillNormal(benchmark::State& state) {
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  const CounterRng rng(1);
  for (auto _ : state) {
    rng.FillNormal(0, v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FillNormal)->Range(1 << 10, 1 << 20);

void BM_EcdfBuild(benchmark::State& state) {
  const std::vector<double> src = Normals(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    std::vector<double> copy = src;
    benchmark::DoNotOptimize(EmpiricalCdf::Build(std::move(copy)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EcdfBuild)->Range(1 << 10, 1 << 20);

void BM_EvaluateDetector(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> abnormal = Normals(n / 10 + 1, 4);
  for (double& v : abnormal) v += 2.0;
  const EmpiricalCdf normal_cdf = EmpiricalCdf::Build(Normals(n, 3));
  const EmpiricalCdf abnormal_cdf = EmpiricalCdf::Build(std::move(abnormal));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EvaluateDetector(normal_cdf, abnormal_cdf, TargetLevel{0.95}));
  }
}
BENCHMARK(BM_EvaluateDetector)->Range(1 << 10, 1 << 20);

void BM_StandInScores(benchmark::State& state) {
  SyntheticConfig cfg;
  const FeatureScorerPair pair = TrainStandInPair(cfg, 1);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair.Draw(StreamKey(1, {i++}), n, n / 10));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 11 / 10);
}
BENCHMARK(BM_StandInScores)->Range(1 << 8, 1 << 16);

}  // namespace
}  // namespace scoring_bias

BENCHMARK_MAIN();
