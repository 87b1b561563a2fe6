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

// Party actors of the hybrid protocol. Every party reacts only to messages
// delivered by the bus plus the coordinator's scheduling calls (start a tree,
// submit statistics for a node, expect a node as its active party).

#ifndef FEDBOOST_FEDERATION_PARTIES_H_
#define FEDBOOST_FEDERATION_PARTIES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fedboost/crypto/paillier.h"
#include "fedboost/crypto/random.h"
#include "fedboost/federation/bus.h"
#include "fedboost/federation/messages.h"
#include "fedboost/federation/partial_model.h"
#include "fedboost/gbdt/gbdt.h"

namespace fedboost::federation {

// Local rows of one party before alignment.
struct PartyData {
  std::vector<std::string> ids;
  gbdt::FeatureMatrix features;
  std::vector<double> labels;  // C parties only
};

// Public facts every party knows about the federation.
struct Roster {
  int districts = 1;
  bool has_d = false;
  int c_features = 0;
  int d_features = 0;
  int lead = 1;  // district whose parties merge bin sketches
  gbdt::TrainParams params;
  bool encrypted = false;
};

class Party {
 public:
  Party(PartyId id, Bus& bus, const Roster& roster, PartyData data);
  virtual ~Party() = default;
  Party(const Party&) = delete;
  Party& operator=(const Party&) = delete;

  PartyId id() const { return id_; }
  std::optional<PartyId> partner() const;

  void SendIds();
  void SendSketch();
  // Samples 0..n-1 at the root; clears the previous tree's subspaces.
  void BeginTree(int tree);
  // Records nodes that were never split as leaves of the other class.
  void EndTree(int tree);

  std::size_t rows() const { return data_.ids.size(); }
  const std::vector<std::string>& ids() const { return data_.ids; }
  bool binned() const { return binned_.has_value(); }
  const gbdt::BinnedFeatures& bins() const { return *binned_; }
  const PartialModel& model() const { return model_; }

 protected:
  virtual void OnMessage(const Message& m);

  int feature_offset() const;
  int local_features() const { return static_cast<int>(data_.features.cols()); }
  const std::vector<gbdt::SampleId>& members(int node) const;
  // Partitions `node` by bin < edge_index, records the split and tells the
  // partner the child subspaces.
  void ApplySplit(int tree, int node, int global_feature, int edge_index);
  void Record(int tree, PartialNode node);

  PartyId id_;
  Bus& bus_;
  Roster roster_;
  PartyData data_;
  std::optional<gbdt::BinnedFeatures> binned_;
  std::map<int, std::vector<gbdt::SampleId>> members_;
  PartialModel model_;

 private:
  void OnIds(const IdList& m);
  void OnSketch(const Message& m);
  void OnEdges(const BinEdgeList& m);
  void OnChildSubspace(const Message& m);
  void MergeSketches();

  std::map<PartyId, BinSketch> sketches_;
};

class CParty : public Party {
 public:
  CParty(PartyId id, Bus& bus, const Roster& roster, PartyData data,
         std::optional<crypto::KeyPair> keys, crypto::RandomSource rng);

  // Gradients from the running predictions; sent to the partner if any.
  void StartTree(int tree);
  void SubmitHistogram(int tree, int node, PartyId active, bool leaf_only);
  // Makes this party the node's active party awaiting `expected` messages.
  void ExpectNode(int tree, int node, bool leaf_only, int expected);
  // true = split, false = leaf, nullopt = not decided yet.
  std::optional<bool> Outcome(int tree, int node) const;
  // Adds this tree's leaf weights to the running predictions.
  void FinishTree(int tree);

  const std::vector<double>& predictions() const { return predictions_; }
  const std::vector<double>& labels() const { return data_.labels; }
  // Every plaintext gradient and hessian this party computed.
  const std::vector<double>& gradient_log() const { return gradient_log_; }

 protected:
  void OnMessage(const Message& m) override;

 private:
  struct Pending {
    int tree = 0;
    bool leaf_only = false;
    int expected = 0;
    std::map<PartyId, Histogram> received;
    std::optional<Histogram> own;
    std::vector<std::vector<std::int64_t>> own_g_raw;
    std::vector<std::vector<std::int64_t>> own_h_raw;
    std::int64_t own_total_g_raw = 0;
    std::int64_t own_total_h_raw = 0;
  };

  void Accept(int node, Histogram h, const Message* from);
  void Decide(int node, Pending& p);
  void OnNotice(const OwnershipNotice& n);

  std::optional<crypto::KeyPair> keys_;
  crypto::RandomSource rng_;
  crypto::Encryptor encryptor_;
  std::vector<double> predictions_;
  std::vector<gbdt::GradientPair> gradients_;
  std::vector<std::int64_t> g_raw_;
  std::vector<std::int64_t> h_raw_;
  std::vector<double> gradient_log_;
  std::map<int, Pending> pending_;
  std::map<std::pair<int, int>, bool> outcomes_;
};

class DParty : public Party {
 public:
  DParty(PartyId id, Bus& bus, const Roster& roster, PartyData data,
         std::optional<crypto::PublicKey> key, crypto::RandomSource rng);

  void SubmitHistogram(int tree, int node, PartyId active);

 protected:
  void OnMessage(const Message& m) override;

 private:
  std::optional<crypto::PublicKey> key_;
  crypto::RandomSource rng_;
  crypto::Encryptor encryptor_;
  int gradient_tree_ = -1;
  GradientBatch gradients_;
};

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_PARTIES_H_
