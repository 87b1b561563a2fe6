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

// Dynamic active-party allocation over virtual party clocks.
//
// Every tree node needs one aggregation task at each of the M parties and then
// a split task at the node's active party, which may start once all M
// aggregations are done. Children are created when the parent's split task
// finishes. Parties run one task at a time and never preempt.

#ifndef FEDBOOST_SCHEDULER_SCHEDULER_H_
#define FEDBOOST_SCHEDULER_SCHEDULER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fedboost/scheduler/durations.h"

namespace fedboost::scheduler {

enum class TaskKind { kAggregate, kSplit };

std::string ToString(TaskKind kind);

struct AllocationRecord {
  int tree_id = 0;
  int node_id = 0;
  int party = 0;  // 1-based
  TaskKind kind = TaskKind::kAggregate;
  Micros start = 0;
  Micros end = 0;

  friend bool operator==(const AllocationRecord&, const AllocationRecord&) = default;
};

struct PartyClock {
  int party_id = 1;  // 1-based
  Micros busy_until = 0;
  DurationModel tau1;  // gradient aggregation
  DurationModel tau2;  // node splitting
};

enum class PolicyMode { kDynamic, kFixed };
// Order in which a party drains its queue: by arrival time, or by node index.
enum class ConflictPolicy { kTaskOrder, kBreadthFirst };

struct SchedulePolicy {
  PolicyMode mode = PolicyMode::kDynamic;
  int fixed_party = 1;
  ConflictPolicy conflict = ConflictPolicy::kTaskOrder;

  // Throws ArgumentError when fixed_party is not in [1, parties].
  void Validate(int parties) const;
};

// Party with the earliest availability max(busy_until, now); ties go to the
// smallest party id. Returns the party_id field of the chosen clock.
int SelectActiveParty(std::span<const PartyClock> clocks, Micros now);

struct TreeSchedule {
  std::vector<AllocationRecord> records;
  Micros start = 0;
  Micros end = 0;
  std::map<int, int> active;  // node -> party
};

// Called when `node`'s split task finishes; returns true when the node split
// so its two children must be scheduled.
using SplitCallback = std::function<bool(int node, int active_party, Micros now)>;

struct ScheduleOptions {
  SchedulePolicy policy;
  std::uint64_t seed = 0;
  // When non-null, node -> party overrides the policy's choice of active party.
  const std::map<int, int>* assignment = nullptr;
};

// Event-driven schedule of one tree whose root becomes ready at `start`.
// Party clocks are read for their duration models and left with busy_until at
// each party's last task end. Durations are drawn from a stream keyed by
// (seed, party, tree, node, kind) so runs under different policies see the
// same draws for the same task.
TreeSchedule ScheduleTree(int tree_id, Micros start, std::span<PartyClock> clocks,
                          const ScheduleOptions& options,
                          const SplitCallback& on_split);

struct ScheduleResult {
  std::vector<AllocationRecord> records;
  Micros makespan = 0;
  std::vector<int> active_counts;  // per party, index party_id - 1
  std::map<int, int> active;       // node -> party
};

// Complete tree of `layers` splitting layers (2^layers - 1 nodes). Under the
// dynamic breadth-first policy the active parties are those the dynamic
// task-order run picks; only the queue order differs.
ScheduleResult RunSchedule(int layers, std::vector<PartyClock> clocks,
                           const SchedulePolicy& policy, std::uint64_t seed = 0);

// Clocks for M parties sharing the same duration models.
std::vector<PartyClock> UniformClocks(int parties, const DurationModel& tau1,
                                      const DurationModel& tau2);

// node -> party for the idealized uniform-duration schedule: layer l <=
// ceil(log2 M) gives its j-th node to party j; deeper layers continue
// round-robin over all parties in breadth-first order. Index 0 unused.
std::vector<int> IdealAssignment(int layers, int parties);
std::vector<int> FixedAssignment(int layers, int party);
// Active-node count per party (index party - 1) of an assignment.
std::vector<int> AssignmentCounts(std::span<const int> assignment, int parties);

int CeilLog2(std::int64_t x);

}  // namespace fedboost::scheduler

#endif  // FEDBOOST_SCHEDULER_SCHEDULER_H_
