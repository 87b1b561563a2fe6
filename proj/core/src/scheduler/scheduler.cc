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
#include <array>
#include <queue>
#include <random>
#include <tuple>

#include "fedboost/error.h"

namespace fedboost::scheduler {
namespace {

struct Task {
  int node = 0;
  TaskKind kind = TaskKind::kAggregate;
};

struct Queued {
  std::array<std::int64_t, 3> key{};
  std::uint64_t seq = 0;
  Task task;

  bool operator>(const Queued& o) const {
    return std::tie(key, seq) > std::tie(o.key, o.seq);
  }
};

struct Event {
  Micros time = 0;
  std::uint64_t seq = 0;
  int party = 0;  // 0-based
  Task task;

  bool operator>(const Event& o) const {
    return std::tie(time, seq) > std::tie(o.time, o.seq);
  }
};

template <typename T>
using MinHeap = std::priority_queue<T, std::vector<T>, std::greater<T>>;

struct PartyState {
  MinHeap<Queued> queue;
  Micros current_end = -1;  // -1 while idle
  Micros last_end = 0;
  Micros queued_aggregate = 0;  // expected duration of queued aggregations
  int pending_splits = 0;       // assigned split tasks not yet started
};

Micros DrawDuration(const DurationModel& model, std::uint64_t seed, int party,
                    int tree, int node, TaskKind kind) {
  if (model.kind() == DurationModel::Kind::kFixed) return model.Expected();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(party), static_cast<std::uint32_t>(tree),
                    static_cast<std::uint32_t>(node),
                    static_cast<std::uint32_t>(kind == TaskKind::kSplit)};
  std::mt19937_64 rng(seq);
  return model.Sample(rng);
}

}  // namespace

std::string ToString(TaskKind kind) {
  return kind == TaskKind::kAggregate ? "aggregate" : "split";
}

void SchedulePolicy::Validate(int parties) const {
  if (mode == PolicyMode::kFixed && (fixed_party < 1 || fixed_party > parties))
    throw ArgumentError("fixed active party " + std::to_string(fixed_party) +
                        " is not in [1, " + std::to_string(parties) + "]");
}

int SelectActiveParty(std::span<const PartyClock> clocks, Micros now) {
  if (clocks.empty()) throw ArgumentError("no parties to select from");
  const PartyClock* best = &clocks[0];
  for (const PartyClock& c : clocks) {
    const Micros a = std::max(c.busy_until, now);
    const Micros b = std::max(best->busy_until, now);
    if (a < b || (a == b && c.party_id < best->party_id)) best = &c;
  }
  return best->party_id;
}

TreeSchedule ScheduleTree(int tree_id, Micros start, std::span<PartyClock> clocks,
                          const ScheduleOptions& options,
                          const SplitCallback& on_split) {
  const int m_count = static_cast<int>(clocks.size());
  if (m_count == 0) throw ArgumentError("schedule needs at least one party");
  for (int m = 0; m < m_count; ++m) {
    if (clocks[m].party_id != m + 1)
      throw ArgumentError("party clocks must be numbered 1..M in order");
  }
  options.policy.Validate(m_count);
  const bool task_order = options.policy.conflict == ConflictPolicy::kTaskOrder;

  std::vector<PartyState> parties(m_count);
  MinHeap<Event> events;
  std::uint64_t seq = 0;
  std::map<int, int> aggregated;
  TreeSchedule out;
  out.start = start;
  out.end = start;

  auto push = [&](int m, Task task, Micros ready) {
    const std::int64_t kind = task.kind == TaskKind::kSplit ? 1 : 0;
    Queued q;
    q.key = task_order ? std::array<std::int64_t, 3>{ready, task.node, kind}
                       : std::array<std::int64_t, 3>{task.node, kind, ready};
    q.seq = seq++;
    q.task = task;
    parties[m].queue.push(q);
  };

  auto choose = [&](int node, Micros now) {
    if (options.assignment != nullptr) {
      auto it = options.assignment->find(node);
      if (it != options.assignment->end()) return it->second;
    }
    if (options.policy.mode == PolicyMode::kFixed) return options.policy.fixed_party;
    // Project each party's availability from its running and queued work.
    std::vector<PartyClock> projected(clocks.begin(), clocks.end());
    for (int m = 0; m < m_count; ++m) {
      const PartyState& p = parties[m];
      const Micros base = p.current_end >= 0 ? std::max(now, p.current_end) : now;
      projected[m].busy_until = base + p.queued_aggregate +
                                p.pending_splits * clocks[m].tau2.Expected();
    }
    return SelectActiveParty(projected, now);
  };

  auto assign = [&](int node, Micros now) {
    const int a = choose(node, now);
    if (a < 1 || a > m_count)
      throw ArgumentError("node " + std::to_string(node) + " assigned to unknown party");
    out.active[node] = a;
    ++parties[a - 1].pending_splits;
    aggregated[node] = 0;
    for (int m = 0; m < m_count; ++m) {
      push(m, Task{node, TaskKind::kAggregate}, now);
      parties[m].queued_aggregate += clocks[m].tau1.Expected();
    }
  };

  auto dispatch = [&](Micros now) {
    for (int m = 0; m < m_count; ++m) {
      PartyState& p = parties[m];
      if (p.current_end >= 0 || p.queue.empty()) continue;
      const Task task = p.queue.top().task;
      p.queue.pop();
      const DurationModel* model = &clocks[m].tau2;
      if (task.kind == TaskKind::kAggregate) {
        p.queued_aggregate -= clocks[m].tau1.Expected();
        model = &clocks[m].tau1;
      } else {
        --p.pending_splits;
      }
      const Micros d = DrawDuration(*model, options.seed, m + 1, tree_id, task.node,
                                    task.kind);
      p.current_end = now + d;
      out.records.push_back({tree_id, task.node, m + 1, task.kind, now, now + d});
      events.push(Event{now + d, seq++, m, task});
    }
  };

  assign(1, start);
  dispatch(start);
  std::vector<int> created;
  while (!events.empty()) {
    const Micros now = events.top().time;
    created.clear();
    while (!events.empty() && events.top().time == now) {
      const Event e = events.top();
      events.pop();
      PartyState& p = parties[e.party];
      p.current_end = -1;
      p.last_end = now;
      out.end = now;
      if (e.task.kind == TaskKind::kAggregate) {
        if (++aggregated[e.task.node] == m_count) {
          push(out.active[e.task.node] - 1, Task{e.task.node, TaskKind::kSplit}, now);
        }
      } else if (on_split(e.task.node, out.active[e.task.node], now)) {
        created.push_back(2 * e.task.node);
        created.push_back(2 * e.task.node + 1);
      }
    }
    std::sort(created.begin(), created.end());
    for (int node : created) assign(node, now);
    dispatch(now);
  }
  for (int m = 0; m < m_count; ++m)
    clocks[m].busy_until = std::max(clocks[m].busy_until, parties[m].last_end);
  return out;
}

ScheduleResult RunSchedule(int layers, std::vector<PartyClock> clocks,
                           const SchedulePolicy& policy, std::uint64_t seed) {
  if (layers < 1 || layers > 24)
    throw ArgumentError("tree must have between 1 and 24 splitting layers");
  const int last_internal = (1 << (layers - 1)) - 1;
  auto grow = [last_internal](int node, int, Micros) { return node <= last_internal; };

  ScheduleOptions options;
  options.policy = policy;
  options.seed = seed;
  std::map<int, int> dynamic_assignment;
  if (policy.mode == PolicyMode::kDynamic &&
      policy.conflict == ConflictPolicy::kBreadthFirst) {
    std::vector<PartyClock> probe = clocks;
    ScheduleOptions first = options;
    first.policy.conflict = ConflictPolicy::kTaskOrder;
    dynamic_assignment = ScheduleTree(0, 0, probe, first, grow).active;
    options.assignment = &dynamic_assignment;
  }

  TreeSchedule tree = ScheduleTree(0, 0, clocks, options, grow);
  ScheduleResult out;
  out.records = std::move(tree.records);
  out.makespan = tree.end - tree.start;
  out.active_counts.assign(clocks.size(), 0);
  for (const auto& [node, party] : tree.active) ++out.active_counts[party - 1];
  out.active = std::move(tree.active);
  return out;
}

std::vector<PartyClock> UniformClocks(int parties, const DurationModel& tau1,
                                      const DurationModel& tau2) {
  if (parties < 1) throw ArgumentError("need at least one party");
  std::vector<PartyClock> out(parties);
  for (int m = 0; m < parties; ++m) out[m] = PartyClock{m + 1, 0, tau1, tau2};
  return out;
}

int CeilLog2(std::int64_t x) {
  if (x < 1) throw ArgumentError("log2 of a non-positive value");
  int l = 0;
  while ((std::int64_t{1} << l) < x) ++l;
  return l;
}

std::vector<int> IdealAssignment(int layers, int parties) {
  if (layers < 1 || layers > 24) throw ArgumentError("layers must be in [1, 24]");
  if (parties < 1) throw ArgumentError("need at least one party");
  const int top = CeilLog2(parties);
  std::vector<int> out(std::size_t{1} << layers, 0);
  int k = 0;
  for (int l = 1; l <= layers; ++l) {
    const int width = 1 << (l - 1);
    for (int j = 0; j < width; ++j) {
      out[width + j] = l <= top ? j + 1 : (k++ % parties) + 1;
    }
  }
  return out;
}

std::vector<int> FixedAssignment(int layers, int party) {
  if (layers < 1 || layers > 24) throw ArgumentError("layers must be in [1, 24]");
  if (party < 1) throw ArgumentError("party ids start at 1");
  std::vector<int> out(std::size_t{1} << layers, party);
  out[0] = 0;
  return out;
}

std::vector<int> AssignmentCounts(std::span<const int> assignment, int parties) {
  std::vector<int> out(parties, 0);
  for (std::size_t node = 1; node < assignment.size(); ++node) {
    const int p = assignment[node];
    if (p < 1 || p > parties) throw ArgumentError("assignment names an unknown party");
    ++out[p - 1];
  }
  return out;
}

}  // namespace fedboost::scheduler
