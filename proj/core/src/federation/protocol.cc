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

#include "fedboost/federation/protocol.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>

#include "fedboost/error.h"

namespace fedboost::federation {

std::string ToString(FederationCase c) {
  switch (c) {
    case FederationCase::kHorizontal: return "horizontal";
    case FederationCase::kVertical: return "vertical";
    case FederationCase::kHybrid: return "hybrid";
    case FederationCase::kHybridEncrypted: return "hybrid_encrypted";
  }
  return "unknown";
}

FederationCase ParseCase(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (t == "1" || t == "horizontal") return FederationCase::kHorizontal;
  if (t == "2" || t == "vertical") return FederationCase::kVertical;
  std::replace(t.begin(), t.end(), '-', '_');
  if (t == "3" || t == "hybrid" || t == "hybrid_plain") return FederationCase::kHybrid;
  if (t == "4" || t == "hybrid_encrypted") return FederationCase::kHybridEncrypted;
  throw ArgumentError("unknown federation case '" + std::string(text) + "'");
}

bool IsEncrypted(FederationCase c) {
  return c == FederationCase::kVertical || c == FederationCase::kHybridEncrypted;
}

bool UsesDFeatures(FederationCase c) { return c != FederationCase::kHorizontal; }

std::vector<DistrictInput> MakeInputs(std::span<const data::DistrictDataset> datasets,
                                      FederationCase fc, int target_district) {
  std::vector<DistrictInput> out;
  for (const data::DistrictDataset& ds : datasets) {
    if (fc == FederationCase::kVertical && ds.district_id != target_district) continue;
    DistrictInput in;
    in.district = ds.district_id;
    in.c.ids = data::Timestamps(ds);
    in.c.features = data::CFeatures(ds);
    in.c.labels = data::Labels(ds);
    if (UsesDFeatures(fc)) {
      PartyData d;
      d.ids = in.c.ids;
      d.features = data::DFeatures(ds);
      in.d = std::move(d);
    }
    out.push_back(std::move(in));
  }
  if (out.empty())
    throw ArgumentError("no district data for case " + ToString(fc) +
                        (fc == FederationCase::kVertical
                             ? " (district " + std::to_string(target_district) + ")"
                             : std::string()));
  return out;
}

std::vector<std::string> AlignSamples(std::span<const std::string> a,
                                      std::span<const std::string> b) {
  std::vector<std::string> x(a.begin(), a.end());
  std::vector<std::string> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  std::vector<std::string> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  if (out.empty()) throw AlignmentError("no sample ids in common");
  return out;
}

gbdt::BinEdges MergeBinSketches(std::span<const std::vector<gbdt::ValueCount>> sketches,
                                int n_bins) {
  std::map<double, std::uint64_t> merged;
  for (const auto& sketch : sketches)
    for (const gbdt::ValueCount& vc : sketch) merged[vc.value] += vc.count;
  std::vector<gbdt::ValueCount> counts;
  counts.reserve(merged.size());
  for (const auto& [value, count] : merged) counts.push_back({value, count});
  return gbdt::BuildBinsFromCounts(counts, n_bins);
}

TrainResult TrainFederated(std::vector<DistrictInput> inputs, const gbdt::TrainParams& params,
                           const FederationOptions& options) {
  params.Validate();
  if (inputs.empty()) throw ArgumentError("no districts to train on");
  const int m_count = static_cast<int>(inputs.size());
  const bool has_d = inputs.front().d.has_value();
  Roster roster;
  roster.districts = m_count;
  roster.has_d = has_d;
  roster.c_features = static_cast<int>(inputs.front().c.features.cols());
  roster.d_features = has_d ? static_cast<int>(inputs.front().d->features.cols()) : 0;
  roster.params = params;
  roster.encrypted = options.encrypted;
  for (const DistrictInput& in : inputs) {
    if (in.d.has_value() != has_d)
      throw ArgumentError("either every district or none has a D party");
    if (static_cast<int>(in.c.features.cols()) != roster.c_features ||
        (has_d && static_cast<int>(in.d->features.cols()) != roster.d_features))
      throw ArgumentError("districts disagree on feature counts");
  }

  std::vector<scheduler::PartyClock> clocks = options.clocks;
  if (clocks.empty()) {
    const auto one = scheduler::DurationModel::Fixed(1.0);
    clocks = scheduler::UniformClocks(m_count, one, one);
  }
  if (static_cast<int>(clocks.size()) != m_count)
    throw ArgumentError("need one party clock per district");
  options.policy.Validate(m_count);
  roster.lead = scheduler::SelectActiveParty(clocks, 0);

  TrainResult result;
  Bus bus;
  for (const Bus::Handler& h : options.observers) bus.AddObserver(h);

  crypto::RandomSource rng = options.crypto_seed ? crypto::RandomSource(*options.crypto_seed)
                                                 : crypto::RandomSource();
  std::optional<crypto::KeyPair> keys;
  if (options.encrypted) {
    keys = crypto::GenerateKeyPair(options.key_bits, rng);
    bus.set_ciphertext_bytes(keys->public_key.ciphertext_bytes());
    result.public_key = keys->public_key;
  }

  std::vector<std::unique_ptr<CParty>> cs;
  std::vector<std::unique_ptr<DParty>> ds;
  for (int k = 1; k <= m_count; ++k) {
    DistrictInput& in = inputs[static_cast<std::size_t>(k - 1)];
    result.districts.push_back(in.district);
    cs.push_back(std::make_unique<CParty>(PartyId{k, PartyClass::kC}, bus, roster,
                                          std::move(in.c), keys,
                                          rng.Fork(2 * static_cast<std::uint64_t>(k))));
    if (has_d) {
      std::optional<crypto::PublicKey> pub;
      if (keys) pub = keys->public_key;
      ds.push_back(std::make_unique<DParty>(PartyId{k, PartyClass::kD}, bus, roster,
                                            std::move(*in.d), pub,
                                            rng.Fork(2 * static_cast<std::uint64_t>(k) + 1)));
    }
  }

  for (auto& c : cs) c->SendIds();
  for (auto& d : ds) d->SendIds();
  bus.Run();
  for (auto& c : cs) c->SendSketch();
  for (auto& d : ds) d->SendSketch();
  bus.Run();
  for (auto& c : cs)
    if (!c->binned()) throw ProtocolError(c->id().ToString() + ": never received bin edges");
  for (auto& d : ds)
    if (!d->binned()) throw ProtocolError(d->id().ToString() + ": never received bin edges");

  scheduler::Micros t = 0;
  scheduler::ScheduleOptions sched;
  sched.policy = options.policy;
  sched.seed = options.schedule_seed;
  for (int tree = 0; tree < params.n_trees; ++tree) {
    bus.set_time(t);
    for (auto& c : cs) c->StartTree(tree);
    bus.Run();

    auto on_split = [&](int node, int active, scheduler::Micros now) {
      bus.set_time(now);
      const bool leaf_only = gbdt::NodeDepth(node) >= params.max_depth;
      const int expected = m_count + (has_d && !leaf_only ? m_count : 0);
      const PartyId a{active, PartyClass::kC};
      CParty& lead = *cs[static_cast<std::size_t>(active - 1)];
      lead.ExpectNode(tree, node, leaf_only, expected);
      for (auto& c : cs) c->SubmitHistogram(tree, node, a, leaf_only);
      if (!leaf_only)
        for (auto& d : ds) d->SubmitHistogram(tree, node, a);
      bus.Run();
      std::optional<bool> outcome = lead.Outcome(tree, node);
      if (!outcome)
        throw ProtocolError("tree " + std::to_string(tree) + " node " + std::to_string(node) +
                            ": active party " + a.ToString() + " could not decide");
      result.active[{tree, node}] = active;
      return *outcome;
    };
    scheduler::TreeSchedule ts = scheduler::ScheduleTree(tree, t, clocks, sched, on_split);
    result.schedule.insert(result.schedule.end(), ts.records.begin(), ts.records.end());
    std::vector<int> counts(static_cast<std::size_t>(m_count), 0);
    for (const auto& [node, party] : ts.active) ++counts[static_cast<std::size_t>(party - 1)];
    result.active_counts.push_back(std::move(counts));
    result.tree_makespans.push_back(ts.end - ts.start);
    t = ts.end;

    for (auto& c : cs) c->FinishTree(tree);
    for (auto& d : ds) d->EndTree(tree);

    double sse = 0.0;
    std::size_t n = 0;
    for (auto& c : cs) {
      for (std::size_t i = 0; i < c->rows(); ++i) {
        const double e = c->predictions()[i] - c->labels()[i];
        sse += e * e;
      }
      n += c->rows();
    }
    result.train_mse.push_back(n == 0 ? 0.0 : sse / static_cast<double>(n));
  }
  result.makespan = t;

  for (auto& c : cs) {
    result.c_models.push_back(c->model());
    result.aligned_ids.push_back(c->ids());
    result.train_predictions.push_back(c->predictions());
    const auto& labels = c->labels();
    result.secrets.labels.insert(result.secrets.labels.end(), labels.begin(), labels.end());
    const auto& grads = c->gradient_log();
    result.secrets.gradients.insert(result.secrets.gradients.end(), grads.begin(), grads.end());
    for (const PartialTree& tree : c->model().trees)
      for (const PartialNode& node : tree.nodes)
        if (!node.elided && node.split) result.secrets.c_thresholds.push_back(node.split->threshold);
  }
  for (auto& d : ds) result.d_models.push_back(d->model());
  result.transcript = bus.transcript();
  return result;
}

}  // namespace fedboost::federation
