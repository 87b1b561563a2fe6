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


#include <benchmark/benchmark.h>

#include "fedboost/scheduler/durations.h"
#include "fedboost/scheduler/scheduler.h"

namespace fedboost::scheduler {
namespace {

void BM_RunSchedule(benchmark::State& state) {
  const int layers = static_cast<int>(state.range(0));
  const int parties = static_cast<int>(state.range(1));
  const auto clocks =
      UniformClocks(parties, DurationModel::Normal(2, 0.2), DurationModel::Normal(7, 0.7));
  SchedulePolicy policy;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(RunSchedule(layers, clocks, policy, seed++));
  state.SetItemsProcessed(state.iterations() * ((1 << layers) - 1));
}
BENCHMARK(BM_RunSchedule)->Args({5, 4})->Args({8, 10})->Args({12, 32});

void BM_BreadthFirst(benchmark::State& state) {
  const auto clocks = UniformClocks(static_cast<int>(state.range(1)), DurationModel::Fixed(2),
                                    DurationModel::Fixed(7));
  SchedulePolicy policy;
  policy.conflict = ConflictPolicy::kBreadthFirst;
  for (auto _ : state)
    benchmark::DoNotOptimize(RunSchedule(static_cast<int>(state.range(0)), clocks, policy));
}
BENCHMARK(BM_BreadthFirst)->Args({5, 4})->Args({8, 10});

}  // namespace
}  // namespace fedboost::scheduler

BENCHMARK_MAIN();
