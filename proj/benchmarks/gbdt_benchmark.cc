// Copyright 2026 The FedBoost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <numeric>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fedboost/gbdt/gbdt.h"

namespace fedboost::gbdt {
namespace {

struct Fixture {
  BinnedFeatures binned;
  std::vector<GradientPair> gradients;
  std::vector<SampleId> samples;
};

Fixture Make(int rows, int cols, int bins) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  std::vector<double> values(static_cast<std::size_t>(rows) * cols);
  for (double& v : values) v = nd(rng);
  Fixture f{BinnedFeatures::Build(FeatureMatrix(rows, cols, std::move(values)), bins), {}, {}};
  f.gradients.resize(rows);
  for (auto& g : f.gradients) g = {nd(rng), 1.0};
  f.samples.resize(rows);
  std::iota(f.samples.begin(), f.samples.end(), SampleId{0});
  return f;
}

void BM_AggregateHistogram(benchmark::State& state) {
  const Fixture f = Make(static_cast<int>(state.range(0)), 17, 32);
  for (auto _ : state) benchmark::DoNotOptimize(AggregateHistogram(f.samples, f.binned, f.gradients));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AggregateHistogram)->Arg(1'000)->Arg(10'000)->Arg(100'000);

void BM_BestSplit(benchmark::State& state) {
  const Fixture f = Make(10'000, 17, static_cast<int>(state.range(0)));
  const auto hist = AggregateHistogram(f.samples, f.binned, f.gradients);
  for (auto _ : state) benchmark::DoNotOptimize(BestSplit(hist, 1.0, 0.0));
}
BENCHMARK(BM_BestSplit)->Arg(16)->Arg(64)->Arg(256);

void BM_TrainEnsemble(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  const int rows = static_cast<int>(state.range(0));
  std::vector<double> x(static_cast<std::size_t>(rows) * 17), y(rows);
  for (double& v : x) v = nd(rng);
  for (double& v : y) v = nd(rng);
  const Dataset data{FeatureMatrix(rows, 17, std::move(x)), std::move(y)};
  TrainParams params;
  for (auto _ : state) benchmark::DoNotOptimize(TrainEnsemble(data, params));
}
BENCHMARK(BM_TrainEnsemble)->Arg(2'000)->Arg(20'000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fedboost::gbdt

BENCHMARK_MAIN();
