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

#include "fedboost/federation/messages.h"

#include <sstream>

#include <nlohmann/json.hpp>

namespace fedboost::federation {
namespace {

constexpr std::size_t kInt = 4;
constexpr std::size_t kReal = 8;
constexpr std::size_t kLength = 4;

struct SizeVisitor {
  std::size_t ct;

  std::size_t operator()(const IdList& m) const {
    std::size_t n = kLength;
    for (const auto& id : m.ids) n += kLength + id.size();
    return n;
  }
  std::size_t operator()(const BinSketch& m) const {
    std::size_t n = kLength + m.features.size() * kInt + kLength;
    for (const auto& c : m.counts) n += kLength + c.size() * 2 * kReal;
    return n;
  }
  std::size_t operator()(const BinEdgeList& m) const {
    std::size_t n = kLength;
    for (const auto& e : m.edges) n += kInt + kLength + e.edges.size() * kReal;
    return n;
  }
  std::size_t operator()(const GradientBatch& m) const {
    return kInt + 2 * kLength + (m.g.size() + m.h.size()) * ct +
           2 * kLength + (m.g_plain.size() + m.h_plain.size()) * kReal;
  }
  std::size_t operator()(const Histogram& m) const {
    std::size_t n = 2 * kInt + kLength + m.features.size() * kInt;
    for (const auto& v : m.g) n += kLength + v.size() * ct;
    for (const auto& v : m.h) n += kLength + v.size() * ct;
    for (const auto& v : m.g_plain) n += kLength + v.size() * kReal;
    for (const auto& v : m.h_plain) n += kLength + v.size() * kReal;
    n += 1;
    if (m.has_totals) n += m.total_g.key_id != 0 ? 2 * ct : 2 * kReal;
    return n;
  }
  std::size_t operator()(const OwnershipNotice& m) const {
    return 2 * kInt + 1 + (m.leaf ? kReal : 2 * kInt);
  }
  std::size_t operator()(const ChildSubspace& m) const {
    return 2 * kInt + 2 * kLength + (m.left.size() + m.right.size()) * kInt;
  }
  std::size_t operator()(const Token&) const { return kReal + 2 * kInt; }
};

}  // namespace

std::string ToString(PartyClass cls) { return cls == PartyClass::kC ? "C" : "D"; }

std::string PartyId::ToString() const {
  return federation::ToString(cls) + std::to_string(district);
}

std::string ToString(MessageKind kind) {
  switch (kind) {
    case MessageKind::kIdList: return "id-list";
    case MessageKind::kBinSketch: return "bin-sketch";
    case MessageKind::kBinEdges: return "bin-edges";
    case MessageKind::kGradientBatch: return "gradient-batch";
    case MessageKind::kHistogram: return "histogram";
    case MessageKind::kOwnershipNotice: return "ownership-notice";
    case MessageKind::kChildSubspace: return "child-subspace";
    case MessageKind::kToken: return "token";
  }
  return "unknown";
}

MessageKind KindOf(const Payload& payload) {
  return static_cast<MessageKind>(payload.index());
}

std::size_t WireSize(const Payload& payload, std::size_t ciphertext_bytes) {
  return std::visit(SizeVisitor{ciphertext_bytes}, payload);
}

std::string TranscriptToJsonl(const std::vector<TranscriptEntry>& transcript) {
  std::ostringstream out;
  for (const TranscriptEntry& e : transcript) {
    out << nlohmann::json{{"time", e.time},
                          {"from", e.from.ToString()},
                          {"to", e.to.ToString()},
                          {"kind", ToString(e.kind)},
                          {"byte_size", e.byte_size}}
               .dump()
        << '\n';
  }
  return out.str();
}

}  // namespace fedboost::federation
