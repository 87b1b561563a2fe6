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

#ifndef FEDBOOST_FEDERATION_PREDICT_H_
#define FEDBOOST_FEDERATION_PREDICT_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fedboost/federation/bus.h"
#include "fedboost/federation/partial_model.h"

namespace fedboost::federation {

// Prediction over partial models: the district's C party walks each tree and
// passes a token to its D partner at every D-owned node.
class CollaborativePredictor {
 public:
  // Models are keyed by their party's district. D models are optional; a
  // D-owned node reached without one throws ProtocolError.
  CollaborativePredictor(std::vector<PartialModel> c_models,
                         std::vector<PartialModel> d_models);
  CollaborativePredictor(const CollaborativePredictor&) = delete;
  CollaborativePredictor& operator=(const CollaborativePredictor&) = delete;

  // Output of every tree for one sample of `district`.
  std::vector<double> PredictTrees(int district, std::span<const double> c_features,
                                   std::span<const double> d_features);
  double Predict(int district, std::span<const double> c_features,
                 std::span<const double> d_features);

  int tree_count(int district) const;
  const std::vector<TranscriptEntry>& transcript() const { return bus_.transcript(); }

 private:
  void OnD(const Message& m);

  std::map<int, PartialModel> c_models_;
  std::map<int, PartialModel> d_models_;
  Bus bus_;
  std::uint64_t next_request_ = 0;
  std::span<const double> d_features_;
  int reply_ = 0;
};

}  // namespace fedboost::federation

#endif  // FEDBOOST_FEDERATION_PREDICT_H_
