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

#ifndef FEDBOOST_METRICS_METRICS_H_
#define FEDBOOST_METRICS_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fedboost::metrics {

// Jain's index (sum x)^2 / (M * sum x^2), in [1/M, 1]. Throws
// UndefinedInputError for an all-zero vector, ArgumentError for an empty or
// negative one.
double JainIndex(std::span<const double> x);
double JainIndex(std::span<const int> x);

// Closed-form fairness of the ideal schedule of a tree with `layers`
// splitting layers over M parties.
double IdealFairness(int layers, int parties);
// Per-party active-node counts behind IdealFairness when M <= 2^(layers-1).
std::vector<int> IdealProfile(int layers, int parties);

// Makespan of the ideal uniform-duration schedule,
//   tau1 (2^n - 1) + tau2 (min(L, n) + max(0, ceil((2^n - 2^L) / M))),
// with L = ceil(log2 M).
double IdealTotalTime(int layers, int parties, double tau1, double tau2);

// Limit of T_M / T_inf for deep trees: 1 + tau2 / (M tau1).
double AsymptoticRatio(int parties, double tau1, double tau2);

// Mean squared difference. Throws ArgumentError on empty or mismatched input.
double Mse(std::span<const double> predicted, std::span<const double> actual);

struct FairnessReport {
  std::vector<double> x;  // active-node count per party
  double jain = 0.0;
  // Across epochs (trees), when per-epoch counts were supplied.
  double epoch_mean = 0.0;
  double epoch_std = 0.0;
};

// x are totals over all epochs; per_epoch holds one count vector per tree.
FairnessReport MakeFairnessReport(std::span<const std::vector<int>> per_epoch,
                                  int parties);

struct EfficiencyReport {
  double makespan = 0.0;  // virtual seconds
  std::optional<double> formula_t_m;
  std::optional<double> ratio;  // makespan / T_inf
  std::vector<double> idle_fraction;
};

std::string ToJson(const FairnessReport& report);
std::string ToJson(const EfficiencyReport& report);

}  // namespace fedboost::metrics

#endif  // FEDBOOST_METRICS_METRICS_H_
