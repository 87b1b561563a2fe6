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

#ifndef FEDBOOST_FEDERATION_MESSAGES_H_
#define FEDBOOST_FEDERATION_MESSAGES_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fedboost/crypto/paillier.h"
#include "fedboost/gbdt/gbdt.h"
#include "fedboost/scheduler/durations.h"

namespace fedboost::federation {

// C: label holder (weather features + labels). D: secondary party
// (demographic features, never labels).
enum class PartyClass { kC, kD };

struct PartyId {
  int district = 1;  // 1-based
  PartyClass cls = PartyClass::kC;

  std::string ToString() const;  // "C3", "D1"
  friend auto operator<=>(const PartyId& a, const PartyId& b) {
    if (a.cls != b.cls) return a.cls <=> b.cls;
    return a.district <=> b.district;
  }
  friend bool operator==(const PartyId&, const PartyId&) = default;
};

std::string ToString(PartyClass cls);

// Sample ids (timestamps) exchanged for alignment.
struct IdList {
  std::vector<std::string> ids;
};

// Distinct local values of each feature with multiplicities, sent to the
// class's binning lead.
struct BinSketch {
  std::vector<int> features;
  std::vector<std::vector<gbdt::ValueCount>> counts;
};

// Global edges broadcast by the binning lead to its own class.
struct BinEdgeList {
  std::vector<gbdt::BinEdges> edges;
};

// Per-sample gradients of one tree, C_m -> D_m. Exactly one of the
// encrypted or plain pairs is filled.
struct GradientBatch {
  int tree = 0;
  std::vector<crypto::Ciphertext> g;
  std::vector<crypto::Ciphertext> h;
  std::vector<double> g_plain;
  std::vector<double> h_plain;
};

// Per-bin gradient sums of one node for the sender's features, addressed to
// the node's active party. C senders also include node totals.
struct Histogram {
  int tree = 0;
  int node = 0;
  std::vector<int> features;  // global feature ids
  std::vector<std::vector<crypto::Ciphertext>> g;
  std::vector<std::vector<crypto::Ciphertext>> h;
  std::vector<std::vector<double>> g_plain;
  std::vector<std::vector<double>> h_plain;
  bool has_totals = false;
  crypto::Ciphertext total_g;
  crypto::Ciphertext total_h;
  double total_g_plain = 0.0;
  double total_h_plain = 0.0;
};

// Outcome of a node sent by its active party to the owning class: either a
// split (feature + edge index, no threshold) or a leaf weight (C only).
struct OwnershipNotice {
  int tree = 0;
  int node = 0;
  bool leaf = false;
  int feature = -1;
  int edge_index = 0;
  double weight = 0.0;
};

// Child sample sets after a split, sent by an owner to its same-district
// partner of the other class. Ids are aligned local row indices.
struct ChildSubspace {
  int tree = 0;
  int node = 0;
  std::vector<gbdt::SampleId> left;
  std::vector<gbdt::SampleId> right;
};

// Prediction token: the receiver evaluates `node` of `tree` for `request`
// and answers with the child in `node`.
struct Token {
  std::uint64_t request = 0;
  int tree = 0;
  int node = 0;
};

using Payload = std::variant<IdList, BinSketch, BinEdgeList, GradientBatch, Histogram,
                             OwnershipNotice, ChildSubspace, Token>;

enum class MessageKind {
  kIdList,
  kBinSketch,
  kBinEdges,
  kGradientBatch,
  kHistogram,
  kOwnershipNotice,
  kChildSubspace,
  kToken,
};

std::string ToString(MessageKind kind);
MessageKind KindOf(const Payload& payload);

// Encoded size: 4-byte ints and ids, 8-byte reals and counts, fixed-width
// ciphertexts, length-prefixed strings and lists.
std::size_t WireSize(const Payload& payload, std::size_t ciphertext_bytes);

struct Message {
  scheduler::Micros time = 0;
  std::uint64_t seq = 0;
  PartyId from;
  PartyId to;
  Payload payload;
  std::size_t byte_size = 0;

  MessageKind kind() const { return KindOf(payload); }
};

struct TranscriptEntry {
  scheduler::Micros time = 0;
  PartyId from;
  PartyId to;
  MessageKind kind = MessageKind::kIdList;
  std::size_t byte_size = 0;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

// One JSON object per line: {time, from, to, kind, byte_size}.
std::string TranscriptToJsonl(const std::vector<TranscriptEntry>& transcript);

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_MESSAGES_H_
