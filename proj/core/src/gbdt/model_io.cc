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

#include "fedboost/gbdt/model_io.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fedboost/error.h"
#include "gbdt/model_json.h"

namespace fedboost::gbdt {
namespace internal {

using nlohmann::json;

json ParamsToJson(const TrainParams& p) {
  return json{{"eta", p.eta},           {"lambda", p.lambda},
              {"n_trees", p.n_trees},   {"max_depth", p.max_depth},
              {"n_bins", p.n_bins},     {"min_gain", p.min_gain}};
}

const json& Require(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    throw ModelError(what + ": missing field '" + key + "'");
  return j.at(key);
}

double RequireNumber(const json& j, const char* key, const std::string& what) {
  const json& v = Require(j, key, what);
  if (!v.is_number()) throw ModelError(what + ": field '" + key + "' is not a number");
  return v.get<double>();
}

int RequireInt(const json& j, const char* key, const std::string& what) {
  const json& v = Require(j, key, what);
  if (!v.is_number_integer())
    throw ModelError(what + ": field '" + key + "' is not an integer");
  return v.get<int>();
}

TrainParams ParamsFromJson(const json& j) {
  TrainParams p;
  p.eta = RequireNumber(j, "eta", "params");
  p.lambda = RequireNumber(j, "lambda", "params");
  p.n_trees = RequireInt(j, "n_trees", "params");
  p.max_depth = RequireInt(j, "max_depth", "params");
  p.n_bins = RequireInt(j, "n_bins", "params");
  p.min_gain = RequireNumber(j, "min_gain", "params");
  return p;
}

}  // namespace internal

namespace {

using nlohmann::json;

json NodeToJson(const TreeNode& n) {
  json j{{"index", n.index}};
  if (n.kind == NodeKind::kSplit) {
    j["kind"] = "split";
    j["feature"] = n.split->feature;
    j["threshold"] = n.split->threshold;
    j["edge_index"] = n.split->edge_index;
    j["gain"] = n.split->gain;
  } else {
    j["kind"] = "leaf";
    j["weight"] = n.weight.value_or(0.0);
  }
  return j;
}

TreeNode NodeFromJson(const json& j) {
  using internal::RequireInt;
  using internal::RequireNumber;
  TreeNode n;
  n.index = RequireInt(j, "index", "node");
  if (n.index < 1) throw ModelError("node: index must be >= 1");
  const json& kind = internal::Require(j, "kind", "node");
  const std::string where = "node " + std::to_string(n.index);
  if (kind == "split") {
    n.kind = NodeKind::kSplit;
    SplitDecision s;
    s.feature = RequireInt(j, "feature", where);
    s.threshold = RequireNumber(j, "threshold", where);
    s.edge_index = j.contains("edge_index") ? RequireInt(j, "edge_index", where) : 0;
    s.gain = j.contains("gain") ? RequireNumber(j, "gain", where) : 0.0;
    n.split = s;
  } else if (kind == "leaf") {
    n.kind = NodeKind::kLeaf;
    n.weight = RequireNumber(j, "weight", where);
  } else {
    throw ModelError(where + ": unknown kind");
  }
  return n;
}

// Every split needs both children and every non-root node a split parent.
void CheckShape(const Tree& tree, std::size_t t) {
  const std::string where = "tree " + std::to_string(t);
  if (tree.nodes().empty()) throw ModelError(where + ": no nodes");
  if (tree.Find(1) == nullptr) throw ModelError(where + ": no root node");
  for (const TreeNode& n : tree.nodes()) {
    if (n.index > 1) {
      const TreeNode* parent = tree.Find(n.index / 2);
      if (parent == nullptr || parent->kind != NodeKind::kSplit)
        throw ModelError(where + ": node " + std::to_string(n.index) +
                         " has no split parent");
    }
    if (n.kind == NodeKind::kSplit &&
        (tree.Find(2 * n.index) == nullptr || tree.Find(2 * n.index + 1) == nullptr))
      throw ModelError(where + ": split node " + std::to_string(n.index) +
                       " lacks a child");
  }
}

}  // namespace

std::string ModelToJson(const Ensemble& ensemble) {
  json trees = json::array();
  for (const Tree& tree : ensemble.trees) {
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes()) nodes.push_back(NodeToJson(n));
    trees.push_back(json{{"nodes", std::move(nodes)}});
  }
  json doc{{"base_score", ensemble.base_score},
           {"params", internal::ParamsToJson(ensemble.params)},
           {"trees", std::move(trees)}};
  return doc.dump(1) + "\n";
}

Ensemble ModelFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model is not valid JSON: ") + e.what());
  }
  Ensemble out;
  try {
    out.base_score = internal::RequireNumber(doc, "base_score", "model");
    out.params = internal::ParamsFromJson(internal::Require(doc, "params", "model"));
    const json& trees = internal::Require(doc, "trees", "model");
    if (!trees.is_array()) throw ModelError("model: 'trees' is not an array");
    for (std::size_t t = 0; t < trees.size(); ++t) {
      const json& nodes = internal::Require(trees[t], "nodes", "tree");
      if (!nodes.is_array()) throw ModelError("tree: 'nodes' is not an array");
      Tree tree;
      for (const json& n : nodes) tree.Add(NodeFromJson(n));
      CheckShape(tree, t);
      out.trees.push_back(std::move(tree));
    }
  } catch (const ArgumentError& e) {
    throw ModelError(e.what());
  } catch (const json::exception& e) {
    throw ModelError(std::string("model: ") + e.what());
  }
  return out;
}

void SaveModel(const Ensemble& ensemble, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write model file " + path.string());
  out << ModelToJson(ensemble);
}

Ensemble LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ModelFromJson(buf.str());
}

}  // namespace fedboost::gbdt
