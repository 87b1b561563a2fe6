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

#ifndef FEDBOOST_FEDERATION_PARTIAL_MODEL_H_
#define FEDBOOST_FEDERATION_PARTIAL_MODEL_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedboost/federation/messages.h"
#include "fedboost/gbdt/gbdt.h"

namespace fedboost::federation {

// A tree node as one party knows it. Nodes owned by the other class carry
// only their index and owner.
struct PartialNode {
  int index = 1;
  PartyClass owner = PartyClass::kC;
  bool elided = false;
  gbdt::NodeKind kind = gbdt::NodeKind::kLeaf;
  std::optional<gbdt::SplitDecision> split;
  std::optional<double> weight;
};

struct PartialTree {
  std::vector<PartialNode> nodes;  // sorted by index

  const PartialNode* Find(int index) const;
  void Put(PartialNode node);
};

struct PartialModel {
  PartyId party;
  double base_score = 0.0;
  gbdt::TrainParams params;
  // Global feature ids below this belong to C parties, the rest to D parties
  // (local D column = id - c_feature_count).
  int c_feature_count = 0;
  std::vector<PartialTree> trees;
};

std::string PartialModelToJson(const PartialModel& model);
// Throws ModelError.
PartialModel PartialModelFromJson(std::string_view text);
void SavePartialModel(const PartialModel& model, const std::filesystem::path& path);
PartialModel LoadPartialModel(const std::filesystem::path& path);

// Full model from a C party's view plus (when D splits exist) its D partner's.
// Throws ModelError when a D-owned node is missing from `d`.
gbdt::Ensemble MergePartialModels(const PartialModel& c, const PartialModel* d);

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_PARTIAL_MODEL_H_
