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

#ifndef FEDBOOST_TOOLS_CLI_CONFIG_H_
#define FEDBOOST_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedboost/data/dataset.h"
#include "fedboost/data/synthetic.h"
#include "fedboost/federation/protocol.h"
#include "fedboost/gbdt/gbdt.h"
#include "fedboost/scheduler/durations.h"
#include "fedboost/scheduler/scheduler.h"

namespace fedboost::cli {

struct DataConfig {
  std::vector<std::filesystem::path> paths;
  std::optional<data::SyntheticSpec> synthetic;
  // Either explicit ranges or a fraction of the pooled timestamps.
  std::optional<data::SplitSpec> split;
  double train_fraction = 0.75;
};

struct ScheduleConfig {
  scheduler::SchedulePolicy policy;
  scheduler::DurationModel tau1 = scheduler::DurationModel::Fixed(1.0);
  scheduler::DurationModel tau2 = scheduler::DurationModel::Fixed(1.0);
  // Per-party overrides; when set its size fixes the party count.
  std::vector<std::pair<scheduler::DurationModel, scheduler::DurationModel>> per_party;
  int parties = 0;  // simulate only; 0 = from per_party
  int layers = 5;   // simulate only
  int trials = 1;   // simulate only

  std::vector<scheduler::PartyClock> Clocks(int parties) const;
};

struct SweepConfig {
  int layers = 5;
  int max_parties = 32;
  double tau1 = 2.0;
  double tau2 = 7.0;
};

struct PredictConfig {
  std::optional<std::filesystem::path> model_dir;
  std::optional<std::filesystem::path> data;
};

struct RunConfig {
  std::uint64_t seed = 42;
  std::filesystem::path output_dir = "fedboost_out";
  std::optional<DataConfig> data;
  gbdt::TrainParams params;
  federation::FederationCase fcase = federation::FederationCase::kHybrid;
  int target_district = 0;  // vertical case only
  ScheduleConfig schedule;
  bool has_schedule = false;
  int key_bits = 512;
  SweepConfig sweep;
  PredictConfig predict;
};

// Throws ConfigError("<field.path>: <problem>").
RunConfig ParseConfig(std::string_view json_text);
RunConfig LoadConfig(const std::filesystem::path& path);

}  // namespace fedboost::cli

#endif  // FEDBOOST_TOOLS_CLI_CONFIG_H_
