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

#include "fedboost/scheduler/scheduler.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fedboost/error.h"
#include "fedboost/metrics/metrics.h"

namespace fedboost::scheduler {
namespace {

std::vector<PartyClock> Uniform(int m, double tau1 = 2.0, double tau2 = 7.0) {
  return UniformClocks(m, DurationModel::Fixed(tau1), DurationModel::Fixed(tau2));
}

Micros Makespan(int layers, int m, ConflictPolicy conflict = ConflictPolicy::kTaskOrder) {
  SchedulePolicy p;
  p.conflict = conflict;
  return RunSchedule(layers, Uniform(m), p).makespan;
}

// Hand-evaluated total time for uniform durations, in seconds.
std::int64_t HandTotal(int n, int m, std::int64_t tau1, std::int64_t tau2) {
  int l = 0;
  while ((1 << l) < m) ++l;
  const std::int64_t nodes = (std::int64_t{1} << n) - 1;
  const std::int64_t rest = (std::int64_t{1} << n) - (std::int64_t{1} << l);
  const std::int64_t deep = rest <= 0 ? 0 : (rest + m - 1) / m;
  return tau1 * nodes + tau2 * (std::min(l, n) + deep);
}

TEST(SelectActiveParty, MinimalBusyUntilWithIndexTieBreak) {
  auto clocks = Uniform(3);
  clocks[0].busy_until = 5;
  clocks[1].busy_until = 3;
  clocks[2].busy_until = 7;
  EXPECT_EQ(SelectActiveParty(clocks, 0), 2);
  auto two = Uniform(2);
  two[0].busy_until = two[1].busy_until = 3;
  EXPECT_EQ(SelectActiveParty(two, 0), 1);
  EXPECT_EQ(SelectActiveParty(Uniform(1), 0), 1);
  EXPECT_THROW(SelectActiveParty(std::vector<PartyClock>{}, 0), ArgumentError);
}

TEST(RunSchedule, HandTracedMakespans) {
  EXPECT_EQ(Makespan(1, 1), 9 * kMicrosPerSecond);
  EXPECT_EQ(Makespan(5, 1), 279 * kMicrosPerSecond);
  EXPECT_EQ(Makespan(5, 4), 125 * kMicrosPerSecond);
  EXPECT_EQ(279, 2 * 31 + 7 * 31);
  EXPECT_EQ(125, 62 + 7 * (2 + 7));
}

TEST(RunSchedule, RejectsInvalidShape) {
  SchedulePolicy p;
  EXPECT_THROW(RunSchedule(0, Uniform(2), p), ArgumentError);
  EXPECT_THROW(RunSchedule(3, {}, p), ArgumentError);
  p.mode = PolicyMode::kFixed;
  p.fixed_party = 3;
  EXPECT_THROW(RunSchedule(3, Uniform(2), p), ArgumentError);
}

TEST(RunSchedule, MatchesHandFormulaOnGrid) {
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m <= 40; ++m)
      EXPECT_EQ(Makespan(n, m), HandTotal(n, m, 2, 7) * kMicrosPerSecond) << n << " " << m;
}

TEST(RunSchedule, CountsMatchIdealAssignment) {
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m <= 32; ++m) {
      const auto r = RunSchedule(n, Uniform(m), SchedulePolicy{});
      const auto ideal = IdealAssignment(n, m);
      EXPECT_EQ(r.active_counts, AssignmentCounts(ideal, m)) << n << " " << m;
    }
  }
}

TEST(RunSchedule, TaskOrderNeverSlowerThanBreadthFirst) {
  for (int n = 2; n <= 6; ++n)
    for (int m = 1; m <= 32; ++m)
      EXPECT_LE(Makespan(n, m), Makespan(n, m, ConflictPolicy::kBreadthFirst)) << n << " " << m;
}

TEST(RunSchedule, BreadthFirstIsStrictlySlowerSomewhere) {
  bool strict = false;
  for (int m = 2; m <= 8; ++m)
    strict |= Makespan(5, m) < Makespan(5, m, ConflictPolicy::kBreadthFirst);
  EXPECT_TRUE(strict);
}

TEST(RunSchedule, MakespanNonIncreasingInParties) {
  for (int n = 1; n <= 7; ++n)
    for (int m = 2; m <= 40; ++m) EXPECT_LE(Makespan(n, m), Makespan(n, m - 1)) << n << " " << m;
}

TEST(RunSchedule, AsymptoticDecay) {
  for (int m : {1, 2, 4, 8}) {
    const double t = MicrosToSeconds(RunSchedule(12, Uniform(m), SchedulePolicy{}).makespan);
    const double t_inf = 2.0 * ((1 << 12) - 1);
    const double predicted = 1.0 + 7.0 / (m * 2.0);
    EXPECT_NEAR(t / t_inf / predicted, 1.0, 0.02) << m;
    EXPECT_DOUBLE_EQ(metrics::AsymptoticRatio(m, 2.0, 7.0), predicted);
  }
}

void CheckRecords(const ScheduleResult& r, int n, int m) {
  std::map<int, std::vector<std::pair<Micros, Micros>>> by_party;
  std::map<int, int> splits, aggregates;
  std::map<int, std::set<int>> aggregate_parties;
  for (const AllocationRecord& rec : r.records) {
    ASSERT_GT(rec.end, rec.start);
    ASSERT_GE(rec.party, 1);
    ASSERT_LE(rec.party, m);
    by_party[rec.party].emplace_back(rec.start, rec.end);
    if (rec.kind == TaskKind::kSplit) {
      ++splits[rec.node_id];
    } else {
      ++aggregates[rec.node_id];
      aggregate_parties[rec.node_id].insert(rec.party);
    }
  }
  for (auto& [party, spans] : by_party) {
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i)
      ASSERT_LE(spans[i - 1].second, spans[i].first) << "party " << party;
  }
  const int nodes = (1 << n) - 1;
  ASSERT_EQ(static_cast<int>(splits.size()), nodes);
  for (int node = 1; node <= nodes; ++node) {
    EXPECT_EQ(splits[node], 1);
    EXPECT_EQ(aggregates[node], m);
    EXPECT_EQ(static_cast<int>(aggregate_parties[node].size()), m);
  }
  // A node's split starts after every aggregation for it has ended, and its
  // children start after it ends.
  std::map<int, Micros> split_end, split_start, agg_end, agg_start;
  for (const AllocationRecord& rec : r.records) {
    if (rec.kind == TaskKind::kSplit) {
      split_start[rec.node_id] = rec.start;
      split_end[rec.node_id] = rec.end;
    } else {
      agg_end[rec.node_id] = std::max(agg_end[rec.node_id], rec.end);
      agg_start[rec.node_id] =
          agg_start.contains(rec.node_id) ? std::min(agg_start[rec.node_id], rec.start) : rec.start;
    }
  }
  for (int node = 1; node <= nodes; ++node) {
    EXPECT_GE(split_start[node], agg_end[node]);
    if (node > 1) { EXPECT_GE(agg_start[node], split_end[node / 2]); }
  }
}

TEST(RunSchedule, RecordsAreConsistentUnderUniformDurations) {
  for (int n : {1, 3, 5})
    for (int m : {1, 3, 4, 10}) CheckRecords(RunSchedule(n, Uniform(m), SchedulePolicy{}), n, m);
}

TEST(RunSchedule, RecordsAreConsistentUnderRandomDurations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int m = 1 + static_cast<int>(seed % 7);
    std::vector<PartyClock> clocks;
    for (int p = 1; p <= m; ++p)
      clocks.push_back(PartyClock{p, 0, DurationModel::Normal(1.0 + 0.3 * p, 0.5),
                                  DurationModel::Normal(4.0 + p, 2.0)});
    for (auto conflict : {ConflictPolicy::kTaskOrder, ConflictPolicy::kBreadthFirst}) {
      for (auto mode : {PolicyMode::kDynamic, PolicyMode::kFixed}) {
        SchedulePolicy pol;
        pol.mode = mode;
        pol.conflict = conflict;
        const auto r = RunSchedule(4, clocks, pol, seed);
        CheckRecords(r, 4, m);
        if (mode == PolicyMode::kFixed) { EXPECT_EQ(r.active_counts[0], 15); }
      }
    }
  }
}

TEST(RunSchedule, SeededRunsRepeat) {
  std::vector<PartyClock> clocks;
  for (int p = 1; p <= 5; ++p)
    clocks.push_back(PartyClock{p, 0, DurationModel::Normal(2, 1), DurationModel::Normal(7, 2)});
  const auto a = RunSchedule(5, clocks, SchedulePolicy{}, 123);
  const auto b = RunSchedule(5, clocks, SchedulePolicy{}, 123);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.makespan, b.makespan);
}

TEST(IdealAssignment, TwoLayersTwoParties) {
  const auto a = IdealAssignment(2, 2);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[1], 1);
  EXPECT_EQ(a[2], 1);
  EXPECT_EQ(a[3], 2);
}

TEST(IdealAssignment, CountProfiles) {
  std::vector<int> n5m32{5, 4, 3, 3, 2, 2, 2, 2};
  n5m32.insert(n5m32.end(), 8, 1);
  n5m32.insert(n5m32.end(), 16, 0);
  EXPECT_EQ(AssignmentCounts(IdealAssignment(5, 32), 32), n5m32);
  const std::vector<int> n6m10{9, 8, 7, 7, 6, 6, 6, 6, 4, 4};
  const auto c = AssignmentCounts(IdealAssignment(6, 10), 10);
  EXPECT_EQ(c, n6m10);
  EXPECT_EQ(std::accumulate(c.begin(), c.end(), 0), 63);
}

TEST(FixedAssignment, EveryNodeToOneParty) {
  const auto a = FixedAssignment(3, 1);
  EXPECT_EQ(std::count(a.begin() + 1, a.end(), 1), 7);
  const auto counts = AssignmentCounts(FixedAssignment(5, 1), 10);
  EXPECT_NEAR(metrics::JainIndex(counts), 0.1, 1e-15);
  EXPECT_EQ(AssignmentCounts(FixedAssignment(4, 1), 1), AssignmentCounts(IdealAssignment(4, 1), 1));
}

TEST(FixedPolicy, SimulationGivesOneHotCounts) {
  SchedulePolicy p;
  p.mode = PolicyMode::kFixed;
  p.fixed_party = 3;
  const auto r = RunSchedule(5, Uniform(10), p);
  std::vector<int> expect(10, 0);
  expect[2] = 31;
  EXPECT_EQ(r.active_counts, expect);
  EXPECT_NEAR(metrics::JainIndex(r.active_counts), 0.1, 1e-15);
}

TEST(DurationModel, Sampling) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(DurationModel::Fixed(2.0).Sample(rng), 2 * kMicrosPerSecond);
  EXPECT_THROW(DurationModel::Fixed(0.0), ArgumentError);
  EXPECT_THROW(DurationModel::Fixed(-1.0), ArgumentError);
  EXPECT_THROW(DurationModel::Normal(-1.0, 1.0), ArgumentError);
  EXPECT_THROW(DurationModel::Empirical({}), ArgumentError);

  const auto normal = DurationModel::Normal(5.0, 1.0);
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const Micros x = normal.Sample(a);
    EXPECT_EQ(x, normal.Sample(b));
    EXPECT_GT(x, 0);
  }
  const auto heavy = DurationModel::Normal(0.1, 5.0);
  for (int i = 0; i < 1000; ++i) EXPECT_GT(heavy.Sample(a), 0);

  const auto emp = DurationModel::Empirical({1, 1, 3});
  std::set<Micros> seen;
  for (int i = 0; i < 200; ++i) seen.insert(emp.Sample(a));
  EXPECT_EQ(seen, (std::set<Micros>{kMicrosPerSecond, 3 * kMicrosPerSecond}));
}

TEST(DurationModel, NormalMeanIsPlausible) {
  std::mt19937_64 rng(3);
  const auto normal = DurationModel::Normal(5.0, 1.0);
  double sum = 0;
  for (int i = 0; i < 20000; ++i) sum += MicrosToSeconds(normal.Sample(rng));
  EXPECT_NEAR(sum / 20000, 5.0, 0.05);
}

}  // namespace
}  // namespace fedboost::scheduler
