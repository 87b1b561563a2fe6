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

#include <random>

#include <gtest/gtest.h>

#include "fedboost/error.h"
#include "support/compare.h"

namespace fedboost::gbdt {
namespace {

Ensemble SampleModel() {
  std::mt19937 rng(17);
  std::normal_distribution<double> nd;
  FeatureMatrix x(150, 3);
  std::vector<double> y(150);
  for (std::size_t r = 0; r < 150; ++r) {
    for (std::size_t c = 0; c < 3; ++c) x(r, c) = nd(rng);
    y[r] = x(r, 0) * x(r, 0) - x(r, 2) + 0.1 * nd(rng);
  }
  TrainParams p;
  p.n_trees = 4;
  p.eta = 0.37;
  return TrainEnsemble(Dataset{x, y}, p);
}

TEST(ModelJson, RoundTripIsExact) {
  const Ensemble e = SampleModel();
  const Ensemble back = ModelFromJson(ModelToJson(e));
  const auto d = testing::CompareEnsembles(e, back);
  EXPECT_TRUE(d.same_structure) << d.first_mismatch;
  EXPECT_EQ(d.max_weight_diff, 0.0);
  EXPECT_EQ(back.params, e.params);
  EXPECT_EQ(back.base_score, e.base_score);
}

TEST(ModelJson, SerializationIsDeterministic) {
  const Ensemble e = SampleModel();
  EXPECT_EQ(ModelToJson(e), ModelToJson(SampleModel()));
  EXPECT_EQ(ModelToJson(ModelFromJson(ModelToJson(e))), ModelToJson(e));
}

TEST(ModelJson, CorruptDocumentsThrowModelError) {
  EXPECT_THROW(ModelFromJson("not json"), ModelError);
  EXPECT_THROW(ModelFromJson("{}"), ModelError);
  EXPECT_THROW(ModelFromJson(R"({"base_score":0,"params":{},"trees":[{"nodes":[]}]})"),
               ModelError);
  std::string text = ModelToJson(SampleModel());
  text.resize(text.size() / 2);
  EXPECT_THROW(ModelFromJson(text), ModelError);
}

TEST(ModelJson, MissingFileThrowsModelError) {
  EXPECT_THROW(LoadModel("/nonexistent/model.json"), ModelError);
}

}  // namespace
}  // namespace fedboost::gbdt
