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

#include "fedboost/federation/parties.h"

#include <algorithm>
#include <numeric>

#include "fedboost/crypto/fixed_point.h"
#include "fedboost/error.h"
#include "fedboost/federation/protocol.h"

namespace fedboost::federation {
namespace {

using crypto::Ciphertext;
using crypto::FixedPoint;
using gbdt::SampleId;

std::string NodeName(int tree, int node) {
  return "tree " + std::to_string(tree) + " node " + std::to_string(node);
}

}  // namespace

// ---- Party -----------------------------------------------------------------

Party::Party(PartyId id, Bus& bus, const Roster& roster, PartyData data)
    : id_(id), bus_(bus), roster_(roster), data_(std::move(data)) {
  if (data_.features.rows() != data_.ids.size())
    throw ArgumentError(id_.ToString() + ": feature rows do not match ids");
  if (id_.cls == PartyClass::kC && data_.labels.size() != data_.ids.size())
    throw ArgumentError(id_.ToString() + ": label count does not match ids");
  model_.party = id_;
  model_.params = roster_.params;
  model_.c_feature_count = roster_.c_features;
  bus_.Register(id_, [this](const Message& m) { OnMessage(m); });
}

std::optional<PartyId> Party::partner() const {
  if (!roster_.has_d) return std::nullopt;
  return PartyId{id_.district, id_.cls == PartyClass::kC ? PartyClass::kD : PartyClass::kC};
}

int Party::feature_offset() const {
  return id_.cls == PartyClass::kC ? 0 : roster_.c_features;
}

void Party::SendIds() {
  if (auto p = partner()) bus_.Send(id_, *p, IdList{data_.ids});
}

void Party::OnIds(const IdList& m) {
  std::vector<std::string> mine = data_.ids;
  std::vector<std::string> theirs = m.ids;
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  if (std::adjacent_find(mine.begin(), mine.end()) != mine.end())
    throw ArgumentError(id_.ToString() + ": duplicate sample id");
  std::vector<std::string> common;
  std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(),
                        std::back_inserter(common));
  if (common.empty())
    throw AlignmentError("district " + std::to_string(id_.district) +
                         ": no sample ids in common");

  std::map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < data_.ids.size(); ++r) row_of[data_.ids[r]] = r;
  PartyData aligned;
  aligned.features = gbdt::FeatureMatrix(0, data_.features.cols());
  for (const std::string& id : common) {
    std::size_t r = row_of.at(id);
    aligned.features.AppendRow(data_.features.row(r));
    if (!data_.labels.empty()) aligned.labels.push_back(data_.labels[r]);
  }
  aligned.ids = std::move(common);
  data_ = std::move(aligned);
}

void Party::SendSketch() {
  BinSketch sketch;
  for (int f = 0; f < local_features(); ++f) {
    sketch.features.push_back(feature_offset() + f);
    std::vector<double> column = data_.features.column(static_cast<std::size_t>(f));
    sketch.counts.push_back(gbdt::CountDistinct(column));
  }
  PartyId lead{roster_.lead, id_.cls};
  if (lead == id_) {
    sketches_[id_] = std::move(sketch);
    MergeSketches();
  } else {
    bus_.Send(id_, lead, std::move(sketch));
  }
}

void Party::OnSketch(const Message& m) {
  if (id_.district != roster_.lead || m.from.cls != id_.cls)
    throw ProtocolError(id_.ToString() + ": unexpected bin sketch from " +
                        m.from.ToString());
  sketches_[m.from] = std::get<BinSketch>(m.payload);
  MergeSketches();
}

void Party::MergeSketches() {
  if (static_cast<int>(sketches_.size()) < roster_.districts) return;
  BinEdgeList out;
  for (int f = 0; f < local_features(); ++f) {
    std::vector<std::vector<gbdt::ValueCount>> parts;
    for (const auto& [from, sketch] : sketches_) {
      if (sketch.counts.size() != static_cast<std::size_t>(local_features()))
        throw ProtocolError(from.ToString() + ": sketch has wrong feature count");
      parts.push_back(sketch.counts[static_cast<std::size_t>(f)]);
    }
    gbdt::BinEdges edges = MergeBinSketches(parts, roster_.params.n_bins);
    edges.feature = feature_offset() + f;
    out.edges.push_back(std::move(edges));
  }
  sketches_.clear();
  for (int d = 1; d <= roster_.districts; ++d) {
    if (d != id_.district) bus_.Send(id_, PartyId{d, id_.cls}, out);
  }
  OnEdges(out);
}

void Party::OnEdges(const BinEdgeList& m) {
  if (m.edges.size() != static_cast<std::size_t>(local_features()))
    throw ProtocolError(id_.ToString() + ": bin edges for the wrong feature count");
  binned_ = gbdt::BinnedFeatures::Apply(data_.features, m.edges);
}

void Party::BeginTree(int tree) {
  if (!binned_) throw ProtocolError(id_.ToString() + ": training before binning");
  members_.clear();
  std::vector<SampleId> all(rows());
  std::iota(all.begin(), all.end(), SampleId{0});
  members_[1] = std::move(all);
  if (model_.trees.size() <= static_cast<std::size_t>(tree))
    model_.trees.resize(static_cast<std::size_t>(tree) + 1);
}

void Party::EndTree(int tree) {
  for (const auto& [node, samples] : members_) {
    if (model_.trees[static_cast<std::size_t>(tree)].Find(node) == nullptr) {
      PartialNode leaf;
      leaf.index = node;
      leaf.owner = PartyClass::kC;
      leaf.elided = true;
      Record(tree, leaf);
    }
  }
}

const std::vector<SampleId>& Party::members(int node) const {
  auto it = members_.find(node);
  if (it == members_.end())
    throw ProtocolError(id_.ToString() + ": no subspace for node " + std::to_string(node));
  return it->second;
}

void Party::ApplySplit(int tree, int node, int global_feature, int edge_index) {
  const int f = global_feature - feature_offset();
  if (f < 0 || f >= local_features())
    throw ProtocolError(id_.ToString() + ": split on feature " +
                        std::to_string(global_feature) + " it does not own");
  const gbdt::BinEdges& edges = binned_->edges(static_cast<std::size_t>(f));
  if (edge_index < 1 || edge_index >= edges.bin_count())
    throw ProtocolError(NodeName(tree, node) + ": edge index out of range");

  ChildSubspace children{tree, node, {}, {}};
  auto column = binned_->column(static_cast<std::size_t>(f));
  for (SampleId s : members(node)) {
    (column[s] < edge_index ? children.left : children.right).push_back(s);
  }
  members_[2 * node] = children.left;
  members_[2 * node + 1] = children.right;

  PartialNode rec;
  rec.index = node;
  rec.owner = id_.cls;
  rec.kind = gbdt::NodeKind::kSplit;
  gbdt::SplitDecision split;
  split.feature = global_feature;
  split.edge_index = edge_index;
  gbdt::ResolveThreshold(split, edges);
  rec.split = split;
  Record(tree, rec);

  if (auto p = partner()) bus_.Send(id_, *p, std::move(children));
}

void Party::OnChildSubspace(const Message& m) {
  const auto& c = std::get<ChildSubspace>(m.payload);
  if (!partner() || m.from != *partner())
    throw ProtocolError(id_.ToString() + ": child subspace from " + m.from.ToString());
  members_[2 * c.node] = c.left;
  members_[2 * c.node + 1] = c.right;
  PartialNode rec;
  rec.index = c.node;
  rec.owner = m.from.cls;
  rec.elided = true;
  Record(c.tree, rec);
}

void Party::Record(int tree, PartialNode node) {
  if (model_.trees.size() <= static_cast<std::size_t>(tree))
    model_.trees.resize(static_cast<std::size_t>(tree) + 1);
  model_.trees[static_cast<std::size_t>(tree)].Put(std::move(node));
}

void Party::OnMessage(const Message& m) {
  switch (m.kind()) {
    case MessageKind::kIdList:
      OnIds(std::get<IdList>(m.payload));
      return;
    case MessageKind::kBinSketch:
      OnSketch(m);
      return;
    case MessageKind::kBinEdges:
      OnEdges(std::get<BinEdgeList>(m.payload));
      return;
    case MessageKind::kChildSubspace:
      OnChildSubspace(m);
      return;
    default:
      throw ProtocolError(id_.ToString() + ": unexpected " + ToString(m.kind()) +
                          " from " + m.from.ToString());
  }
}

// ---- CParty ----------------------------------------------------------------

CParty::CParty(PartyId id, Bus& bus, const Roster& roster, PartyData data,
               std::optional<crypto::KeyPair> keys, crypto::RandomSource rng)
    : Party(id, bus, roster, std::move(data)), keys_(std::move(keys)), rng_(std::move(rng)) {
  if (roster_.encrypted && !keys_)
    throw ArgumentError(id_.ToString() + ": encrypted run without a key pair");
  if (roster_.encrypted) encryptor_ = crypto::Encryptor(keys_->public_key, rng_);
}

void CParty::StartTree(int tree) {
  BeginTree(tree);
  if (predictions_.size() != rows()) predictions_.assign(rows(), 0.0);
  gradients_ = gbdt::ComputeGradients(predictions_, data_.labels);
  for (const gbdt::GradientPair& gp : gradients_) {
    gradient_log_.push_back(gp.g);
    gradient_log_.push_back(gp.h);
  }
  if (roster_.encrypted) {
    g_raw_.resize(rows());
    h_raw_.resize(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      g_raw_[i] = FixedPoint::FromDouble(gradients_[i].g).raw;
      h_raw_[i] = FixedPoint::FromDouble(gradients_[i].h).raw;
    }
  }
  auto p = partner();
  if (!p) return;
  GradientBatch batch;
  batch.tree = tree;
  if (roster_.encrypted) {
    const mpz_class& n = keys_->public_key.n();
    batch.g.reserve(rows());
    batch.h.reserve(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      batch.g.push_back(encryptor_.Encrypt(crypto::EncodeRaw(g_raw_[i], n), rng_));
      batch.h.push_back(encryptor_.Encrypt(crypto::EncodeRaw(h_raw_[i], n), rng_));
    }
  } else {
    for (const gbdt::GradientPair& gp : gradients_) {
      batch.g_plain.push_back(gp.g);
      batch.h_plain.push_back(gp.h);
    }
  }
  bus_.Send(id_, *p, std::move(batch));
}

void CParty::SubmitHistogram(int tree, int node, PartyId active, bool leaf_only) {
  const std::vector<SampleId>& samples = members(node);
  const bool enc = roster_.encrypted;
  const int nf = leaf_only ? 0 : local_features();

  Histogram h;
  h.tree = tree;
  h.node = node;
  h.has_totals = true;
  std::vector<std::vector<std::int64_t>> g_raw(static_cast<std::size_t>(nf));
  std::vector<std::vector<std::int64_t>> h_raw(static_cast<std::size_t>(nf));
  std::int64_t tg_raw = 0;
  std::int64_t th_raw = 0;
  for (SampleId s : samples) {
    h.total_g_plain += gradients_[s].g;
    h.total_h_plain += gradients_[s].h;
    if (enc) {
      tg_raw += g_raw_[s];
      th_raw += h_raw_[s];
    }
  }
  for (int f = 0; f < nf; ++f) {
    const auto uf = static_cast<std::size_t>(f);
    const int bins = binned_->edges(uf).bin_count();
    h.features.push_back(f);
    auto column = binned_->column(uf);
    if (enc) {
      g_raw[uf].assign(static_cast<std::size_t>(bins), 0);
      h_raw[uf].assign(static_cast<std::size_t>(bins), 0);
      for (SampleId s : samples) {
        g_raw[uf][column[s]] += g_raw_[s];
        h_raw[uf][column[s]] += h_raw_[s];
      }
    } else {
      std::vector<double> gs(static_cast<std::size_t>(bins), 0.0);
      std::vector<double> hs(static_cast<std::size_t>(bins), 0.0);
      for (SampleId s : samples) {
        gs[column[s]] += gradients_[s].g;
        hs[column[s]] += gradients_[s].h;
      }
      h.g_plain.push_back(std::move(gs));
      h.h_plain.push_back(std::move(hs));
    }
  }

  if (active == id_) {
    auto it = pending_.find(node);
    if (it == pending_.end())
      throw ProtocolError(id_.ToString() + ": not active for " + NodeName(tree, node));
    it->second.own_g_raw = std::move(g_raw);
    it->second.own_h_raw = std::move(h_raw);
    it->second.own_total_g_raw = tg_raw;
    it->second.own_total_h_raw = th_raw;
    Accept(node, std::move(h), nullptr);
    return;
  }

  if (enc) {
    const mpz_class& n = keys_->public_key.n();
    auto encrypt = [&](std::int64_t raw) {
      return encryptor_.Encrypt(crypto::EncodeRaw(raw, n), rng_);
    };
    for (int f = 0; f < nf; ++f) {
      const auto uf = static_cast<std::size_t>(f);
      std::vector<Ciphertext> gs;
      std::vector<Ciphertext> hs;
      for (std::int64_t v : g_raw[uf]) gs.push_back(encrypt(v));
      for (std::int64_t v : h_raw[uf]) hs.push_back(encrypt(v));
      h.g.push_back(std::move(gs));
      h.h.push_back(std::move(hs));
    }
    h.total_g = encrypt(tg_raw);
    h.total_h = encrypt(th_raw);
    h.total_g_plain = 0.0;
    h.total_h_plain = 0.0;
  }
  bus_.Send(id_, active, std::move(h));
}

void CParty::ExpectNode(int tree, int node, bool leaf_only, int expected) {
  Pending p;
  p.tree = tree;
  p.leaf_only = leaf_only;
  p.expected = expected;
  pending_[node] = std::move(p);
}

std::optional<bool> CParty::Outcome(int tree, int node) const {
  auto it = outcomes_.find({tree, node});
  if (it == outcomes_.end()) return std::nullopt;
  return it->second;
}

void CParty::Accept(int node, Histogram h, const Message* from) {
  auto it = pending_.find(node);
  if (it == pending_.end() || it->second.tree != h.tree) {
    throw ProtocolError(id_.ToString() + ": histogram for " + NodeName(h.tree, node) +
                        " it is not active for");
  }
  Pending& p = it->second;
  if (from == nullptr) {
    p.own = std::move(h);
  } else {
    if (from->from.cls == PartyClass::kC && !h.has_totals)
      throw ProtocolError(from->from.ToString() + ": histogram without node totals");
    p.received[from->from] = std::move(h);
  }
  const int have = static_cast<int>(p.received.size()) + (p.own ? 1 : 0);
  if (have == p.expected) {
    Decide(node, p);
    pending_.erase(it);
  }
}

void CParty::Decide(int node, Pending& p) {
  const int tree = p.tree;
  const bool enc = roster_.encrypted;
  const crypto::PrivateKey* key = enc ? &keys_->private_key : nullptr;
  const crypto::PublicKey* pub = enc ? &key->public_key() : nullptr;

  // Sum of one statistic over senders: ciphertexts are multiplied and
  // decrypted once, then the own plaintext share is added.
  auto reduce = [&](auto&& pick_ct, std::int64_t own_raw, const std::vector<const Histogram*>& from) {
    std::optional<Ciphertext> acc;
    for (const Histogram* h : from) {
      const Ciphertext& c = pick_ct(*h);
      if (!acc) {
        pub->CheckOwned(c);
        acc = c;
      } else {
        pub->AddInPlace(*acc, c);
      }
    }
    std::int64_t raw = own_raw;
    if (acc) raw += crypto::DecodeRaw(key->Decrypt(*acc), pub->n());
    return FixedPoint{raw}.ToDouble();
  };

  std::vector<const Histogram*> c_all;  // district order, own included
  std::vector<const Histogram*> c_others;
  std::vector<const Histogram*> d_all;
  for (int d = 1; d <= roster_.districts; ++d) {
    PartyId c{d, PartyClass::kC};
    if (c == id_) {
      c_all.push_back(&*p.own);
    } else {
      auto it = p.received.find(c);
      if (it == p.received.end())
        throw ProtocolError(NodeName(tree, node) + ": no statistics from " + c.ToString());
      c_all.push_back(&it->second);
      c_others.push_back(&it->second);
    }
    if (!p.leaf_only && roster_.has_d) {
      auto it = p.received.find(PartyId{d, PartyClass::kD});
      if (it == p.received.end())
        throw ProtocolError(NodeName(tree, node) + ": no statistics from D" + std::to_string(d));
      d_all.push_back(&it->second);
    }
  }

  double total_g = 0.0;
  double total_h = 0.0;
  if (enc) {
    total_g = reduce([](const Histogram& h) -> const Ciphertext& { return h.total_g; },
                     p.own_total_g_raw, c_others);
    total_h = reduce([](const Histogram& h) -> const Ciphertext& { return h.total_h; },
                     p.own_total_h_raw, c_others);
  } else {
    for (const Histogram* h : c_all) {
      total_g += h->total_g_plain;
      total_h += h->total_h_plain;
    }
  }

  std::optional<gbdt::SplitDecision> split;
  if (!p.leaf_only) {
    std::vector<gbdt::BinHistogram> hists;
    const Histogram* own_hist = &*p.own;
    auto gather = [&](const std::vector<const Histogram*>& all,
                      const std::vector<const Histogram*>& others, bool with_own,
                      int count, int offset) {
      for (int f = 0; f < count; ++f) {
        const auto uf = static_cast<std::size_t>(f);
        gbdt::BinHistogram bh;
        bh.feature = offset + f;
        std::size_t bins = 0;
        for (const Histogram* h : all) {
          const std::size_t nb = !enc            ? h->g_plain.at(uf).size()
                                 : h == own_hist ? p.own_g_raw.at(uf).size()
                                                 : h->g.at(uf).size();
          if (bins == 0) bins = nb;
          if (nb != bins)
            throw ProtocolError(NodeName(tree, node) + ": bin counts disagree for feature " +
                                std::to_string(bh.feature));
        }
        bh.grad.assign(bins, 0.0);
        bh.hess.assign(bins, 0.0);
        for (std::size_t b = 0; b < bins; ++b) {
          if (enc) {
            const std::int64_t og = with_own ? p.own_g_raw[uf][b] : 0;
            const std::int64_t oh = with_own ? p.own_h_raw[uf][b] : 0;
            bh.grad[b] = reduce([&](const Histogram& h) -> const Ciphertext& { return h.g[uf][b]; },
                                og, others);
            bh.hess[b] = reduce([&](const Histogram& h) -> const Ciphertext& { return h.h[uf][b]; },
                                oh, others);
          } else {
            for (const Histogram* h : all) {
              bh.grad[b] += h->g_plain[uf][b];
              bh.hess[b] += h->h_plain[uf][b];
            }
          }
        }
        hists.push_back(std::move(bh));
      }
    };
    gather(c_all, c_others, true, roster_.c_features, 0);
    if (roster_.has_d) gather(d_all, d_all, false, roster_.d_features, roster_.c_features);
    split = gbdt::BestSplit(hists, roster_.params.lambda, roster_.params.min_gain);
  }

  outcomes_[{tree, node}] = split.has_value();
  if (!split) {
    OwnershipNotice notice{tree, node, true, -1, 0,
                           gbdt::LeafWeightOrZero(total_g, total_h, roster_.params.eta,
                                                  roster_.params.lambda)};
    for (int d = 1; d <= roster_.districts; ++d) {
      if (d != id_.district) bus_.Send(id_, PartyId{d, PartyClass::kC}, notice);
    }
    OnNotice(notice);
    return;
  }
  OwnershipNotice notice{tree, node, false, split->feature, split->edge_index, 0.0};
  if (split->feature < roster_.c_features) {
    for (int d = 1; d <= roster_.districts; ++d) {
      if (d != id_.district) bus_.Send(id_, PartyId{d, PartyClass::kC}, notice);
    }
    OnNotice(notice);
  } else {
    for (int d = 1; d <= roster_.districts; ++d) bus_.Send(id_, PartyId{d, PartyClass::kD}, notice);
  }
}

void CParty::OnNotice(const OwnershipNotice& n) {
  if (n.leaf) {
    PartialNode leaf;
    leaf.index = n.node;
    leaf.owner = PartyClass::kC;
    leaf.kind = gbdt::NodeKind::kLeaf;
    leaf.weight = n.weight;
    Record(n.tree, leaf);
    return;
  }
  ApplySplit(n.tree, n.node, n.feature, n.edge_index);
}

void CParty::FinishTree(int tree) {
  for (const PartialNode& n : model_.trees[static_cast<std::size_t>(tree)].nodes) {
    if (n.elided || n.kind != gbdt::NodeKind::kLeaf) continue;
    for (SampleId s : members(n.index)) predictions_[s] += *n.weight;
  }
  EndTree(tree);
}

void CParty::OnMessage(const Message& m) {
  switch (m.kind()) {
    case MessageKind::kHistogram: {
      const auto& h = std::get<Histogram>(m.payload);
      Accept(h.node, h, &m);
      return;
    }
    case MessageKind::kOwnershipNotice:
      if (m.from.cls != PartyClass::kC)
        throw ProtocolError(id_.ToString() + ": ownership notice from " + m.from.ToString());
      OnNotice(std::get<OwnershipNotice>(m.payload));
      return;
    default:
      Party::OnMessage(m);
  }
}

// ---- DParty ----------------------------------------------------------------

DParty::DParty(PartyId id, Bus& bus, const Roster& roster, PartyData data,
               std::optional<crypto::PublicKey> key, crypto::RandomSource rng)
    : Party(id, bus, roster, std::move(data)), key_(std::move(key)), rng_(std::move(rng)) {
  if (roster_.encrypted && !key_)
    throw ArgumentError(id_.ToString() + ": encrypted run without a public key");
  if (roster_.encrypted) encryptor_ = crypto::Encryptor(*key_, rng_);
}

void DParty::SubmitHistogram(int tree, int node, PartyId active) {
  if (gradient_tree_ != tree)
    throw ProtocolError(id_.ToString() + ": no gradients for tree " + std::to_string(tree));
  const std::vector<SampleId>& samples = members(node);
  Histogram h;
  h.tree = tree;
  h.node = node;
  for (int f = 0; f < local_features(); ++f) {
    const auto uf = static_cast<std::size_t>(f);
    const auto bins = static_cast<std::size_t>(binned_->edges(uf).bin_count());
    h.features.push_back(feature_offset() + f);
    auto column = binned_->column(uf);
    if (roster_.encrypted) {
      std::vector<Ciphertext> gs(bins);
      std::vector<Ciphertext> hs(bins);
      std::vector<bool> used(bins, false);
      for (SampleId s : samples) {
        const std::size_t b = column[s];
        if (!used[b]) {
          gs[b] = gradients_.g.at(s);
          hs[b] = gradients_.h.at(s);
          used[b] = true;
        } else {
          key_->AddInPlace(gs[b], gradients_.g[s]);
          key_->AddInPlace(hs[b], gradients_.h[s]);
        }
      }
      for (std::size_t b = 0; b < bins; ++b) {
        if (!used[b]) {
          gs[b] = encryptor_.EncryptZero(rng_);
          hs[b] = encryptor_.EncryptZero(rng_);
        }
      }
      h.g.push_back(std::move(gs));
      h.h.push_back(std::move(hs));
    } else {
      std::vector<double> gs(bins, 0.0);
      std::vector<double> hs(bins, 0.0);
      for (SampleId s : samples) {
        gs[column[s]] += gradients_.g_plain.at(s);
        hs[column[s]] += gradients_.h_plain.at(s);
      }
      h.g_plain.push_back(std::move(gs));
      h.h_plain.push_back(std::move(hs));
    }
  }
  bus_.Send(id_, active, std::move(h));
}

void DParty::OnMessage(const Message& m) {
  switch (m.kind()) {
    case MessageKind::kGradientBatch: {
      if (!partner() || m.from != *partner())
        throw ProtocolError(id_.ToString() + ": gradients from " + m.from.ToString());
      gradients_ = std::get<GradientBatch>(m.payload);
      const std::size_t n = roster_.encrypted ? gradients_.g.size() : gradients_.g_plain.size();
      if (n != rows())
        throw ProtocolError(id_.ToString() + ": gradient batch has the wrong length");
      gradient_tree_ = gradients_.tree;
      BeginTree(gradient_tree_);
      return;
    }
    case MessageKind::kOwnershipNotice: {
      const auto& n = std::get<OwnershipNotice>(m.payload);
      if (n.leaf || m.from.cls != PartyClass::kC)
        throw ProtocolError(id_.ToString() + ": unexpected ownership notice from " +
                            m.from.ToString());
      ApplySplit(n.tree, n.node, n.feature, n.edge_index);
      return;
    }
    default:
      Party::OnMessage(m);
  }
}

}  // namespace fedboost::federation
