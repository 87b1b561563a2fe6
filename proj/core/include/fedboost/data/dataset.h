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

#ifndef FEDBOOST_DATA_DATASET_H_
#define FEDBOOST_DATA_DATASET_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fedboost/gbdt/gbdt.h"

namespace fedboost::data {

// Label-holding parties see the hour plus four weather readings; secondary
// parties see twelve demographic statistics.
inline constexpr std::size_t kCFeatureCount = 5;
inline constexpr std::size_t kDFeatureCount = 12;

const std::array<std::string_view, kCFeatureCount>& CFeatureNames();
const std::array<std::string_view, kDFeatureCount>& DFeatureNames();

struct Row {
  std::string timestamp;  // ISO-8601 UTC, YYYY-MM-DDTHH:MM:SSZ
  std::array<double, kCFeatureCount> c{};
  std::array<double, kDFeatureCount> d{};
  double label = 0.0;

  friend bool operator==(const Row&, const Row&) = default;
};

// Rows of one district, timestamps unique and ascending.
struct DistrictDataset {
  int district_id = 1;
  std::vector<Row> rows;

  friend bool operator==(const DistrictDataset&, const DistrictDataset&) = default;
};

bool IsIsoTimestamp(std::string_view text);

// Throws ValidationError on unsorted or duplicate timestamps, malformed
// timestamps, or non-finite cells. Unlabeled rows carry a NaN label.
void Validate(const DistrictDataset& dataset, bool require_label = true);

// Inclusive timestamp ranges; train_end must precede test_begin.
struct SplitSpec {
  std::string train_begin;
  std::string train_end;
  std::string test_begin;
  std::string test_end;

  // Throws ArgumentError for reversed or overlapping ranges.
  void Validate() const;
};

// Rows outside both ranges are dropped. Throws SplitError when either side
// comes out empty.
std::pair<DistrictDataset, DistrictDataset> SplitByTime(const DistrictDataset& dataset,
                                                        const SplitSpec& spec);

// Puts the first `train_fraction` of the pooled distinct timestamps in train.
SplitSpec SplitSpecByFraction(std::span<const DistrictDataset> datasets,
                              double train_fraction);

struct LabelScaler {
  double mean = 0.0;
  double std = 1.0;

  double Normalize(double y) const { return (y - mean) / std; }
  double Denormalize(double z) const { return z * std + mean; }
};

// Pooled mean and population standard deviation. Throws
// DegenerateLabelError when the labels are constant.
LabelScaler FitLabelScaler(std::span<const DistrictDataset> train);
void ApplyLabelScaler(const LabelScaler& scaler, std::vector<DistrictDataset>& data);

struct NormalizedData {
  std::vector<DistrictDataset> datasets;
  LabelScaler scaler;
};
NormalizedData NormalizeLabels(std::vector<DistrictDataset> train);

// Column views used by the learners.
gbdt::FeatureMatrix CFeatures(const DistrictDataset& dataset);
gbdt::FeatureMatrix DFeatures(const DistrictDataset& dataset);
gbdt::FeatureMatrix AllFeatures(const DistrictDataset& dataset);
std::vector<double> Labels(const DistrictDataset& dataset);
std::vector<std::string> Timestamps(const DistrictDataset& dataset);

// Rows of all districts in district order.
gbdt::Dataset Pool(std::span<const DistrictDataset> datasets, bool with_d_features);

}  // namespace fedboost::data

#endif  // FEDBOOST_DATA_DATASET_H_
