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

#include "fedboost/federation/predict.h"

#include "fedboost/error.h"

namespace fedboost::federation {
namespace {

int Child(const PartialNode& n, std::span<const double> x, int offset) {
  const int f = n.split->feature - offset;
  if (f < 0 || static_cast<std::size_t>(f) >= x.size())
    throw ArgumentError("sample lacks feature " + std::to_string(n.split->feature));
  return 2 * n.index + (x[static_cast<std::size_t>(f)] <= n.split->threshold ? 0 : 1);
}

}  // namespace

CollaborativePredictor::CollaborativePredictor(std::vector<PartialModel> c_models,
                                               std::vector<PartialModel> d_models) {
  for (PartialModel& m : c_models) {
    const PartyId id = m.party;
    if (id.cls != PartyClass::kC) throw ArgumentError("expected a C-party model");
    c_models_[id.district] = std::move(m);
    bus_.Register(id, [this](const Message& msg) {
      reply_ = std::get<Token>(msg.payload).node;
    });
  }
  for (PartialModel& m : d_models) {
    const PartyId id = m.party;
    if (id.cls != PartyClass::kD) throw ArgumentError("expected a D-party model");
    d_models_[id.district] = std::move(m);
    bus_.Register(id, [this](const Message& msg) { OnD(msg); });
  }
}

int CollaborativePredictor::tree_count(int district) const {
  auto it = c_models_.find(district);
  return it == c_models_.end() ? 0 : static_cast<int>(it->second.trees.size());
}

void CollaborativePredictor::OnD(const Message& m) {
  const Token& token = std::get<Token>(m.payload);
  const PartialModel& model = d_models_.at(m.to.district);
  if (static_cast<std::size_t>(token.tree) >= model.trees.size())
    throw ModelError(m.to.ToString() + ": no tree " + std::to_string(token.tree));
  const PartialNode* n = model.trees[static_cast<std::size_t>(token.tree)].Find(token.node);
  if (n == nullptr || n->elided || !n->split)
    throw ModelError(m.to.ToString() + ": node " + std::to_string(token.node) +
                     " is not a D split");
  bus_.Send(m.to, m.from, Token{token.request, token.tree,
                                Child(*n, d_features_, model.c_feature_count)});
}

std::vector<double> CollaborativePredictor::PredictTrees(int district,
                                                         std::span<const double> c_features,
                                                         std::span<const double> d_features) {
  auto it = c_models_.find(district);
  if (it == c_models_.end())
    throw ProtocolError("no C party for district " + std::to_string(district));
  const PartialModel& model = it->second;
  const PartyId c{district, PartyClass::kC};
  const PartyId d{district, PartyClass::kD};
  d_features_ = d_features;
  const std::uint64_t request = next_request_++;

  std::vector<double> out;
  out.reserve(model.trees.size());
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    int index = 1;
    for (;;) {
      const PartialNode* n = model.trees[t].Find(index);
      if (n == nullptr)
        throw ModelError("tree " + std::to_string(t) + ": missing node " + std::to_string(index));
      if (!n->elided) {
        if (n->kind == gbdt::NodeKind::kLeaf) {
          out.push_back(n->weight.value_or(0.0));
          break;
        }
        index = Child(*n, c_features, 0);
        continue;
      }
      if (n->owner != PartyClass::kD)
        throw ModelError("tree " + std::to_string(t) + ": node " + std::to_string(index) +
                         " elided in its owner's model");
      if (!d_models_.contains(district))
        throw ProtocolError("district " + std::to_string(district) + ": node " +
                            std::to_string(index) + " is owned by D party " + d.ToString() +
                            ", which is offline");
      reply_ = 0;
      bus_.Send(c, d, Token{request, static_cast<int>(t), index});
      bus_.Run();
      if (reply_ != 2 * index && reply_ != 2 * index + 1)
        throw ProtocolError(d.ToString() + ": bad token reply");
      index = reply_;
    }
  }
  return out;
}

double CollaborativePredictor::Predict(int district, std::span<const double> c_features,
                                       std::span<const double> d_features) {
  double sum = c_models_.contains(district) ? c_models_.at(district).base_score : 0.0;
  for (double v : PredictTrees(district, c_features, d_features)) sum += v;
  return sum;
}

}  // namespace fedboost::federation
