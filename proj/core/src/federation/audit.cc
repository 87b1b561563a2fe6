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

#include "fedboost/federation/audit.h"

#include <set>

#include "fedboost/crypto/fixed_point.h"

namespace fedboost::federation {

TranscriptAuditor::TranscriptAuditor(bool encrypted, int c_features)
    : encrypted_(encrypted), c_features_(c_features) {}

Bus::Handler TranscriptAuditor::Observer() {
  return [this](const Message& m) { Observe(m); };
}

void TranscriptAuditor::Violation(const Message& m, const std::string& what) {
  violations_.push_back(ToString(m.kind()) + " " + m.from.ToString() + "->" +
                        m.to.ToString() + ": " + what);
}

void TranscriptAuditor::Observe(const Message& m) {
  ++messages_;
  const bool to_d = m.to.cls == PartyClass::kD;
  const bool same_district = m.from.district == m.to.district;
  const bool same_class = m.from.cls == m.to.cls;
  if (to_d) ++d_bound_;
  if (m.from == m.to) Violation(m, "message to self");
  const std::string where = m.from.ToString() + "->" + m.to.ToString();

  auto real_to_d = [&](double v, const std::string& what) {
    if (to_d) d_reals_.emplace_back(v, ToString(m.kind()) + " " + where + " " + what);
  };

  switch (m.kind()) {
    case MessageKind::kIdList:
      if (same_class || !same_district) Violation(m, "id lists only go to the district partner");
      break;
    case MessageKind::kBinSketch:
      if (!same_class) Violation(m, "bin sketches stay within a class");
      for (const auto& counts : std::get<BinSketch>(m.payload).counts)
        for (const gbdt::ValueCount& vc : counts) real_to_d(vc.value, "sketch value");
      break;
    case MessageKind::kBinEdges:
      if (!same_class) Violation(m, "bin edges stay within a class");
      for (const gbdt::BinEdges& e : std::get<BinEdgeList>(m.payload).edges)
        for (double v : e.edges) real_to_d(v, "bin edge");
      break;
    case MessageKind::kGradientBatch: {
      const auto& b = std::get<GradientBatch>(m.payload);
      if (m.from.cls != PartyClass::kC || !to_d || !same_district)
        Violation(m, "gradients only go from C to the district's D party");
      if (encrypted_ && (!b.g_plain.empty() || !b.h_plain.empty()))
        Violation(m, "plaintext gradients in an encrypted run");
      for (double v : b.g_plain) real_to_d(v, "gradient");
      for (double v : b.h_plain) real_to_d(v, "hessian");
      if (to_d) {
        for (const auto& c : b.g) d_ciphertexts_.push_back(c.value);
        for (const auto& c : b.h) d_ciphertexts_.push_back(c.value);
      }
      break;
    }
    case MessageKind::kHistogram: {
      const auto& h = std::get<Histogram>(m.payload);
      if (to_d) Violation(m, "histograms only go to the active C party");
      if (encrypted_ && (!h.g_plain.empty() || !h.h_plain.empty() ||
                         (h.has_totals && h.total_g.key_id == 0)))
        Violation(m, "plaintext statistics in an encrypted run");
      if (m.from.cls == PartyClass::kD && h.has_totals)
        Violation(m, "D party sent node totals");
      histogram_targets_.emplace_back(h.tree, h.node, m.to.district);
      break;
    }
    case MessageKind::kOwnershipNotice: {
      const auto& n = std::get<OwnershipNotice>(m.payload);
      if (m.from.cls != PartyClass::kC) Violation(m, "notices come from the active C party");
      if (to_d && n.leaf) Violation(m, "leaf weight sent to a D party");
      if (to_d && !n.leaf && n.feature < c_features_)
        Violation(m, "C-owned split sent to a D party");
      if (!to_d && !n.leaf && n.feature >= c_features_)
        Violation(m, "D-owned split sent to a C party");
      if (n.leaf) real_to_d(n.weight, "leaf weight");
      break;
    }
    case MessageKind::kChildSubspace:
    case MessageKind::kToken:
      if (same_class || !same_district) Violation(m, "only exchanged with the district partner");
      break;
  }
}

AuditReport TranscriptAuditor::Finish(const AuditSecrets& secrets,
                                      const std::map<std::pair<int, int>, int>& active,
                                      const std::optional<mpz_class>& modulus) const {
  AuditReport report;
  report.messages = messages_;
  report.d_bound = d_bound_;
  report.violations = violations_;

  for (const auto& [tree, node, district] : histogram_targets_) {
    auto it = active.find({tree, node});
    if (it == active.end() || it->second != district)
      report.violations.push_back("histogram for tree " + std::to_string(tree) + " node " +
                                  std::to_string(node) + " sent to a non-active party");
  }

  auto scan = [&](const std::vector<double>& values, const std::string& what) {
    const std::set<double> secret(values.begin(), values.end());
    for (const auto& [v, desc] : d_reals_) {
      if (secret.contains(v)) report.violations.push_back(desc + " equals a " + what);
    }
  };
  scan(secrets.labels, "label");
  scan(secrets.gradients, "plaintext gradient");
  scan(secrets.c_thresholds, "C-owned threshold");

  if (modulus && !d_ciphertexts_.empty()) {
    std::set<mpz_class> encoded;
    for (double v : secrets.gradients)
      encoded.insert(crypto::EncodeSigned(v, *modulus));
    for (const mpz_class& c : d_ciphertexts_) {
      if (encoded.contains(c)) {
        report.violations.push_back("gradient ciphertext equals an encoded plaintext");
        break;
      }
    }
  }
  return report;
}

}  // namespace fedboost::federation
