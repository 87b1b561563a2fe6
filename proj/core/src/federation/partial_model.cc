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

#include "fedboost/federation/partial_model.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fedboost/error.h"
#include "gbdt/model_json.h"

namespace fedboost::federation {
namespace {

using nlohmann::json;
using gbdt::internal::Require;
using gbdt::internal::RequireInt;
using gbdt::internal::RequireNumber;

json NodeToJson(const PartialNode& n) {
  json j{{"index", n.index}, {"owner_class", ToString(n.owner)}};
  if (n.elided) return j;
  if (n.kind == gbdt::NodeKind::kSplit) {
    j["kind"] = "split";
    j["feature"] = n.split->feature;
    j["threshold"] = n.split->threshold;
    j["edge_index"] = n.split->edge_index;
  } else {
    j["kind"] = "leaf";
    j["weight"] = n.weight.value_or(0.0);
  }
  return j;
}

PartyClass ClassFromString(const json& v, const std::string& where) {
  if (v == "C") return PartyClass::kC;
  if (v == "D") return PartyClass::kD;
  throw ModelError(where + ": owner_class must be \"C\" or \"D\"");
}

PartialNode NodeFromJson(const json& j) {
  PartialNode n;
  n.index = RequireInt(j, "index", "node");
  if (n.index < 1) throw ModelError("node: index must be >= 1");
  const std::string where = "node " + std::to_string(n.index);
  n.owner = ClassFromString(Require(j, "owner_class", where), where);
  if (!j.contains("kind")) {
    n.elided = true;
    return n;
  }
  const json& kind = j.at("kind");
  if (kind == "split") {
    n.kind = gbdt::NodeKind::kSplit;
    gbdt::SplitDecision s;
    s.feature = RequireInt(j, "feature", where);
    s.threshold = RequireNumber(j, "threshold", where);
    s.edge_index = RequireInt(j, "edge_index", where);
    n.split = s;
  } else if (kind == "leaf") {
    n.kind = gbdt::NodeKind::kLeaf;
    n.weight = RequireNumber(j, "weight", where);
  } else {
    throw ModelError(where + ": unknown kind");
  }
  return n;
}

PartyId PartyFromString(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'C' && s[0] != 'D'))
    throw ModelError("model: malformed party '" + s + "'");
  PartyId id;
  id.cls = s[0] == 'C' ? PartyClass::kC : PartyClass::kD;
  try {
    std::size_t used = 0;
    id.district = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1 || id.district < 1) throw ModelError("");
  } catch (const std::exception&) {
    throw ModelError("model: malformed party '" + s + "'");
  }
  return id;
}

gbdt::TreeNode ToTreeNode(const PartialNode& n) {
  gbdt::TreeNode out;
  out.index = n.index;
  out.kind = n.kind;
  out.split = n.split;
  out.weight = n.weight;
  return out;
}

}  // namespace

const PartialNode* PartialTree::Find(int index) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), index,
                             [](const PartialNode& n, int i) { return n.index < i; });
  return it != nodes.end() && it->index == index ? &*it : nullptr;
}

void PartialTree::Put(PartialNode node) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node.index,
                             [](const PartialNode& n, int i) { return n.index < i; });
  if (it != nodes.end() && it->index == node.index) {
    *it = std::move(node);
  } else {
    nodes.insert(it, std::move(node));
  }
}

std::string PartialModelToJson(const PartialModel& model) {
  json trees = json::array();
  for (const PartialTree& tree : model.trees) {
    json nodes = json::array();
    for (const PartialNode& n : tree.nodes) nodes.push_back(NodeToJson(n));
    trees.push_back(json{{"nodes", std::move(nodes)}});
  }
  json doc{{"party", model.party.ToString()},
           {"base_score", model.base_score},
           {"params", gbdt::internal::ParamsToJson(model.params)},
           {"c_feature_count", model.c_feature_count},
           {"trees", std::move(trees)}};
  return doc.dump(1) + "\n";
}

PartialModel PartialModelFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model is not valid JSON: ") + e.what());
  }
  PartialModel out;
  try {
    const json& party = Require(doc, "party", "model");
    if (!party.is_string()) throw ModelError("model: 'party' is not a string");
    out.party = PartyFromString(party.get<std::string>());
    out.base_score = RequireNumber(doc, "base_score", "model");
    out.params = gbdt::internal::ParamsFromJson(Require(doc, "params", "model"));
    out.c_feature_count = RequireInt(doc, "c_feature_count", "model");
    const json& trees = Require(doc, "trees", "model");
    if (!trees.is_array()) throw ModelError("model: 'trees' is not an array");
    for (const json& t : trees) {
      const json& nodes = Require(t, "nodes", "tree");
      if (!nodes.is_array()) throw ModelError("tree: 'nodes' is not an array");
      PartialTree tree;
      for (const json& n : nodes) tree.Put(NodeFromJson(n));
      out.trees.push_back(std::move(tree));
    }
  } catch (const json::exception& e) {
    throw ModelError(std::string("model: ") + e.what());
  }
  return out;
}

void SavePartialModel(const PartialModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write model file " + path.string());
  out << PartialModelToJson(model);
}

PartialModel LoadPartialModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return PartialModelFromJson(buf.str());
}

gbdt::Ensemble MergePartialModels(const PartialModel& c, const PartialModel* d) {
  gbdt::Ensemble out;
  out.base_score = c.base_score;
  out.params = c.params;
  for (std::size_t t = 0; t < c.trees.size(); ++t) {
    gbdt::Tree tree;
    for (const PartialNode& n : c.trees[t].nodes) {
      if (!n.elided) {
        tree.Add(ToTreeNode(n));
        continue;
      }
      const PartialNode* other =
          d != nullptr && t < d->trees.size() ? d->trees[t].Find(n.index) : nullptr;
      if (other == nullptr || other->elided)
        throw ModelError("tree " + std::to_string(t) + ": node " +
                         std::to_string(n.index) + " is not known to any party");
      tree.Add(ToTreeNode(*other));
    }
    out.trees.push_back(std::move(tree));
  }
  return out;
}

}  // namespace fedboost::federation
