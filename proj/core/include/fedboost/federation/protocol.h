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

// Federated training driver. Parties talk only through the bus; the driver
// plays the coordinator that tells parties when a tree starts and which party
// is active for each node, following the scheduler's virtual clock.

#ifndef FEDBOOST_FEDERATION_PROTOCOL_H_
#define FEDBOOST_FEDERATION_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fedboost/crypto/paillier.h"
#include "fedboost/data/dataset.h"
#include "fedboost/federation/audit.h"
#include "fedboost/federation/bus.h"
#include "fedboost/federation/parties.h"
#include "fedboost/federation/partial_model.h"
#include "fedboost/gbdt/gbdt.h"
#include "fedboost/scheduler/scheduler.h"

namespace fedboost::federation {

// 1: C parties of every district. 2: C and D of one district. 3 and 4: C and
// D of every district, 4 with Paillier-encrypted gradients.
enum class FederationCase {
  kHorizontal = 1,
  kVertical = 2,
  kHybrid = 3,
  kHybridEncrypted = 4,
};

std::string ToString(FederationCase c);
// Accepts "horizontal", "vertical", "hybrid" (or "hybrid-plain"),
// "hybrid_encrypted" (or "hybrid-encrypted") or 1..4.
FederationCase ParseCase(std::string_view text);
bool IsEncrypted(FederationCase c);
bool UsesDFeatures(FederationCase c);

struct DistrictInput {
  int district = 1;  // original district id
  PartyData c;
  std::optional<PartyData> d;
};

// Party inputs for `fc`. Case 2 keeps only `target_district`.
std::vector<DistrictInput> MakeInputs(std::span<const data::DistrictDataset> datasets,
                                      FederationCase fc, int target_district = 1);

// Sorted intersection. Throws AlignmentError when empty.
std::vector<std::string> AlignSamples(std::span<const std::string> a,
                                      std::span<const std::string> b);

// Edges over the union of per-party distinct-value sketches of one feature;
// equal to BuildBins over the pooled column.
gbdt::BinEdges MergeBinSketches(std::span<const std::vector<gbdt::ValueCount>> sketches,
                                int n_bins);

struct FederationOptions {
  bool encrypted = false;
  int key_bits = 512;
  std::optional<std::uint64_t> crypto_seed;  // OS entropy when unset
  // One clock per district (scheduler party ids 1..M). Empty: 1 s fixed.
  std::vector<scheduler::PartyClock> clocks;
  scheduler::SchedulePolicy policy;
  std::uint64_t schedule_seed = 0;
  std::vector<Bus::Handler> observers;
};

struct TrainResult {
  std::vector<int> districts;  // original ids; party k is districts[k - 1]
  std::vector<PartialModel> c_models;
  std::vector<PartialModel> d_models;  // empty without D parties
  std::vector<std::vector<std::string>> aligned_ids;
  std::vector<std::vector<double>> train_predictions;  // per district, aligned order
  std::vector<double> train_mse;                       // pooled, after each tree
  std::vector<scheduler::AllocationRecord> schedule;
  std::map<std::pair<int, int>, int> active;  // (tree, node) -> party
  std::vector<std::vector<int>> active_counts;  // per tree, per party
  std::vector<scheduler::Micros> tree_makespans;
  scheduler::Micros makespan = 0;
  std::vector<TranscriptEntry> transcript;
  std::optional<crypto::PublicKey> public_key;
  AuditSecrets secrets;
};

TrainResult TrainFederated(std::vector<DistrictInput> inputs, const gbdt::TrainParams& params,
                           const FederationOptions& options);

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_PROTOCOL_H_
