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

#include "fedboost/data/dataset.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fedboost/error.h"

namespace fedboost::data {

const std::array<std::string_view, kCFeatureCount>& CFeatureNames() {
  static constexpr std::array<std::string_view, kCFeatureCount> kNames = {
      "hour", "temperature", "wind_speed", "humidity", "barometer"};
  return kNames;
}

const std::array<std::string_view, kDFeatureCount>& DFeatureNames() {
  static constexpr std::array<std::string_view, kDFeatureCount> kNames = {
      "headcount", "gender_ratio", "age_b1",  "age_b2",          "age_b3",
      "age_b4",    "age_b5",       "wage_b1", "wage_b2",         "wage_b3",
      "corr_industrial", "corr_commercial"};
  return kNames;
}

bool IsIsoTimestamp(std::string_view t) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (t.size() != 20) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    switch (i) {
      case 4:
      case 7:
        if (c != '-') return false;
        break;
      case 10:
        if (c != 'T') return false;
        break;
      case 13:
      case 16:
        if (c != ':') return false;
        break;
      case 19:
        if (c != 'Z') return false;
        break;
      default:
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
  }
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (t[i] - '0');
    return v;
  };
  const int month = num(5, 2);
  const int day = num(8, 2);
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && num(11, 2) < 24 &&
         num(14, 2) < 60 && num(17, 2) < 61;
}

void Validate(const DistrictDataset& dataset, bool require_label) {
  const std::string where = "district " + std::to_string(dataset.district_id) + ": ";
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    const Row& r = dataset.rows[i];
    if (!IsIsoTimestamp(r.timestamp))
      throw ValidationError(where + "malformed timestamp '" + r.timestamp + "'", 0);
    if (i > 0 && !(dataset.rows[i - 1].timestamp < r.timestamp))
      throw ValidationError(where + "timestamps not unique and ascending at " + r.timestamp, 0);
    for (double v : r.c)
      if (!std::isfinite(v)) throw ValidationError(where + "non-finite feature", 0);
    for (double v : r.d)
      if (!std::isfinite(v)) throw ValidationError(where + "non-finite feature", 0);
    if (require_label && !std::isfinite(r.label)) throw ValidationError(where + "non-finite label", 0);
  }
}

void SplitSpec::Validate() const {
  for (const std::string* t : {&train_begin, &train_end, &test_begin, &test_end}) {
    if (!IsIsoTimestamp(*t)) throw ArgumentError("split range bound '" + *t + "' is malformed");
  }
  if (train_end < train_begin || test_end < test_begin)
    throw ArgumentError("split range ends before it begins");
  if (!(train_end < test_begin))
    throw ArgumentError("train range must end before the test range begins");
}

std::pair<DistrictDataset, DistrictDataset> SplitByTime(const DistrictDataset& dataset,
                                                        const SplitSpec& spec) {
  spec.Validate();
  DistrictDataset train{dataset.district_id, {}};
  DistrictDataset test{dataset.district_id, {}};
  for (const Row& r : dataset.rows) {
    if (r.timestamp >= spec.train_begin && r.timestamp <= spec.train_end) {
      train.rows.push_back(r);
    } else if (r.timestamp >= spec.test_begin && r.timestamp <= spec.test_end) {
      test.rows.push_back(r);
    }
  }
  const std::string where = "district " + std::to_string(dataset.district_id);
  if (train.rows.empty()) throw SplitError(where + ": train range selects no rows");
  if (test.rows.empty()) throw SplitError(where + ": test range selects no rows");
  return {std::move(train), std::move(test)};
}

SplitSpec SplitSpecByFraction(std::span<const DistrictDataset> datasets,
                              double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ArgumentError("train_fraction must be in (0, 1)");
  std::vector<std::string> stamps;
  for (const DistrictDataset& d : datasets)
    for (const Row& r : d.rows) stamps.push_back(r.timestamp);
  std::sort(stamps.begin(), stamps.end());
  stamps.erase(std::unique(stamps.begin(), stamps.end()), stamps.end());
  if (stamps.size() < 2) throw SplitError("need at least two timestamps to split");
  auto k = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(stamps.size())));
  k = std::clamp<std::size_t>(k, 1, stamps.size() - 1);
  return SplitSpec{stamps.front(), stamps[k - 1], stamps[k], stamps.back()};
}

LabelScaler FitLabelScaler(std::span<const DistrictDataset> train) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const DistrictDataset& d : train) {
    for (const Row& r : d.rows) {
      sum += r.label;
      ++n;
    }
  }
  if (n == 0) throw DegenerateLabelError("no labels to normalize");
  const double mean = sum / static_cast<double>(n);
  double var = 0.0;
  for (const DistrictDataset& d : train)
    for (const Row& r : d.rows) var += (r.label - mean) * (r.label - mean);
  const double std = std::sqrt(var / static_cast<double>(n));
  if (!(std > 0.0)) throw DegenerateLabelError("labels have zero standard deviation");
  return {mean, std};
}

void ApplyLabelScaler(const LabelScaler& scaler, std::vector<DistrictDataset>& data) {
  for (DistrictDataset& d : data)
    for (Row& r : d.rows) r.label = scaler.Normalize(r.label);
}

NormalizedData NormalizeLabels(std::vector<DistrictDataset> train) {
  NormalizedData out;
  out.scaler = FitLabelScaler(train);
  out.datasets = std::move(train);
  ApplyLabelScaler(out.scaler, out.datasets);
  return out;
}

gbdt::FeatureMatrix CFeatures(const DistrictDataset& dataset) {
  gbdt::FeatureMatrix m(dataset.rows.size(), kCFeatureCount);
  for (std::size_t i = 0; i < dataset.rows.size(); ++i)
    for (std::size_t c = 0; c < kCFeatureCount; ++c) m(i, c) = dataset.rows[i].c[c];
  return m;
}

gbdt::FeatureMatrix DFeatures(const DistrictDataset& dataset) {
  gbdt::FeatureMatrix m(dataset.rows.size(), kDFeatureCount);
  for (std::size_t i = 0; i < dataset.rows.size(); ++i)
    for (std::size_t c = 0; c < kDFeatureCount; ++c) m(i, c) = dataset.rows[i].d[c];
  return m;
}

gbdt::FeatureMatrix AllFeatures(const DistrictDataset& dataset) {
  return gbdt::FeatureMatrix::HorizontalConcat(CFeatures(dataset), DFeatures(dataset));
}

std::vector<double> Labels(const DistrictDataset& dataset) {
  std::vector<double> out;
  out.reserve(dataset.rows.size());
  for (const Row& r : dataset.rows) out.push_back(r.label);
  return out;
}

std::vector<std::string> Timestamps(const DistrictDataset& dataset) {
  std::vector<std::string> out;
  out.reserve(dataset.rows.size());
  for (const Row& r : dataset.rows) out.push_back(r.timestamp);
  return out;
}

gbdt::Dataset Pool(std::span<const DistrictDataset> datasets, bool with_d_features) {
  gbdt::Dataset out;
  const std::size_t width = kCFeatureCount + (with_d_features ? kDFeatureCount : 0);
  std::size_t rows = 0;
  for (const DistrictDataset& d : datasets) rows += d.rows.size();
  out.features = gbdt::FeatureMatrix(rows, width);
  out.labels.reserve(rows);
  std::size_t i = 0;
  for (const DistrictDataset& d : datasets) {
    for (const Row& r : d.rows) {
      for (std::size_t c = 0; c < kCFeatureCount; ++c) out.features(i, c) = r.c[c];
      if (with_d_features) {
        for (std::size_t c = 0; c < kDFeatureCount; ++c)
          out.features(i, kCFeatureCount + c) = r.d[c];
      }
      out.labels.push_back(r.label);
      ++i;
    }
  }
  return out;
}

}  // namespace fedboost::data
