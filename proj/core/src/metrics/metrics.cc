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

#include "fedboost/metrics/metrics.h"

#include <cmath>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "fedboost/error.h"

namespace fedboost::metrics {
namespace {

int CeilLog2(std::int64_t x) {
  int l = 0;
  while ((std::int64_t{1} << l) < x) ++l;
  return l;
}

void CheckShape(int layers, int parties) {
  if (layers < 1 || layers > 40) throw ArgumentError("layers must be in [1, 40]");
  if (parties < 1) throw ArgumentError("need at least one party");
}

}  // namespace

double JainIndex(std::span<const double> x) {
  if (x.empty()) throw ArgumentError("Jain index of an empty vector");
  double sum = 0.0;
  double sq = 0.0;
  for (double v : x) {
    if (!(v >= 0.0)) throw ArgumentError("Jain index needs non-negative values");
    sum += v;
    sq += v * v;
  }
  if (sq == 0.0) throw UndefinedInputError("Jain index of an all-zero vector");
  return sum * sum / (static_cast<double>(x.size()) * sq);
}

double JainIndex(std::span<const int> x) {
  std::vector<double> d(x.begin(), x.end());
  return JainIndex(std::span<const double>(d));
}

std::vector<int> IdealProfile(int layers, int parties) {
  CheckShape(layers, parties);
  const int top = CeilLog2(parties);
  const std::int64_t rest = (std::int64_t{1} << layers) - (std::int64_t{1} << top);
  if (rest < 0) throw ArgumentError("profile needs M <= 2^(layers - 1)");
  const std::int64_t p = rest / parties;
  const std::int64_t q = rest % parties;
  std::vector<int> x(parties);
  for (int m = 1; m <= parties; ++m)
    x[m - 1] = static_cast<int>(top - CeilLog2(m) + p + (m <= q ? 1 : 0));
  return x;
}

double IdealFairness(int layers, int parties) {
  CheckShape(layers, parties);
  const std::int64_t nodes = (std::int64_t{1} << layers) - 1;
  if (parties > (std::int64_t{1} << (layers - 1))) {
    const std::int64_t sq = 3 * (std::int64_t{1} << layers) - 2 * layers - 3;
    return static_cast<double>(nodes) * static_cast<double>(nodes) /
           (static_cast<double>(parties) * static_cast<double>(sq));
  }
  return JainIndex(std::span<const int>(IdealProfile(layers, parties)));
}

double IdealTotalTime(int layers, int parties, double tau1, double tau2) {
  CheckShape(layers, parties);
  if (!(tau1 > 0.0) || !(tau2 > 0.0)) throw ArgumentError("durations must be positive");
  const int top = CeilLog2(parties);
  const std::int64_t nodes = (std::int64_t{1} << layers) - 1;
  std::int64_t split_rounds = std::min(top, layers);
  if (top < layers) {
    const std::int64_t rest = (std::int64_t{1} << layers) - (std::int64_t{1} << top);
    split_rounds += (rest + parties - 1) / parties;
  }
  return tau1 * static_cast<double>(nodes) + tau2 * static_cast<double>(split_rounds);
}

double AsymptoticRatio(int parties, double tau1, double tau2) {
  if (parties < 1) throw ArgumentError("need at least one party");
  if (!(tau1 > 0.0) || !(tau2 > 0.0)) throw ArgumentError("durations must be positive");
  return 1.0 + tau2 / (parties * tau1);
}

double Mse(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size())
    throw ArgumentError("prediction and label vectors differ in length");
  if (predicted.empty()) throw ArgumentError("MSE of empty vectors");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - actual[i];
    sum += d * d;
  }
  return sum / static_cast<double>(predicted.size());
}

FairnessReport MakeFairnessReport(std::span<const std::vector<int>> per_epoch,
                                  int parties) {
  if (parties < 1) throw ArgumentError("need at least one party");
  FairnessReport r;
  r.x.assign(parties, 0.0);
  std::vector<double> epoch_jain;
  for (const auto& counts : per_epoch) {
    if (static_cast<int>(counts.size()) != parties)
      throw ArgumentError("epoch count vector has the wrong length");
    for (int m = 0; m < parties; ++m) r.x[m] += counts[m];
    epoch_jain.push_back(JainIndex(std::span<const int>(counts)));
  }
  r.jain = JainIndex(std::span<const double>(r.x));
  if (!epoch_jain.empty()) {
    double mean = 0.0;
    for (double j : epoch_jain) mean += j;
    mean /= static_cast<double>(epoch_jain.size());
    double var = 0.0;
    for (double j : epoch_jain) var += (j - mean) * (j - mean);
    r.epoch_mean = mean;
    r.epoch_std = std::sqrt(var / static_cast<double>(epoch_jain.size()));
  }
  return r;
}

std::string ToJson(const FairnessReport& report) {
  return nlohmann::json{{"x", report.x},
                        {"jain", report.jain},
                        {"epoch_mean", report.epoch_mean},
                        {"epoch_std", report.epoch_std}}
      .dump(1);
}

std::string ToJson(const EfficiencyReport& report) {
  nlohmann::json j{{"makespan", report.makespan},
                   {"idle_fraction", report.idle_fraction}};
  j["formula_T_M"] = report.formula_t_m ? nlohmann::json(*report.formula_t_m) : nlohmann::json(nullptr);
  j["ratio"] = report.ratio ? nlohmann::json(*report.ratio) : nlohmann::json(nullptr);
  return j.dump(1);
}

}  // namespace fedboost::metrics
