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

// Information-partition audit of a protocol run. The auditor watches every
// message as it is sent and, once training is over, checks what reached
// D-class parties against the C parties' secrets.

#ifndef FEDBOOST_FEDERATION_AUDIT_H_
#define FEDBOOST_FEDERATION_AUDIT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fedboost/federation/bus.h"
#include "fedboost/federation/messages.h"

namespace fedboost::federation {

// Values that must never reach a D-class party in the clear.
struct AuditSecrets {
  std::vector<double> labels;
  std::vector<double> gradients;     // g and h of every sample and tree
  std::vector<double> c_thresholds;  // thresholds of C-owned splits
};

struct AuditReport {
  std::size_t messages = 0;
  std::size_t d_bound = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

class TranscriptAuditor {
 public:
  TranscriptAuditor(bool encrypted, int c_features);

  void Observe(const Message& m);
  Bus::Handler Observer();

  // `modulus` enables the check that gradient ciphertexts differ from the
  // encoded plaintexts. `active` maps (tree, node) to the active district.
  AuditReport Finish(const AuditSecrets& secrets,
                     const std::map<std::pair<int, int>, int>& active,
                     const std::optional<mpz_class>& modulus) const;

 private:
  void Violation(const Message& m, const std::string& what);

  bool encrypted_;
  int c_features_;
  std::size_t messages_ = 0;
  std::size_t d_bound_ = 0;
  std::vector<std::string> violations_;
  // (value, description) of every real number sent to a D party.
  std::vector<std::pair<double, std::string>> d_reals_;
  std::vector<mpz_class> d_ciphertexts_;
  std::vector<std::tuple<int, int, int>> histogram_targets_;  // tree, node, district
};

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_AUDIT_H_
