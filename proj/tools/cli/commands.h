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

#ifndef FEDBOOST_TOOLS_CLI_COMMANDS_H_
#define FEDBOOST_TOOLS_CLI_COMMANDS_H_

#include <exception>
#include <filesystem>
#include <vector>

#include "cli/config.h"
#include "fedboost/data/dataset.h"

namespace fedboost::cli {

// Each command writes its outputs under cfg.output_dir and throws a
// fedboost::Error subclass on failure.
void RunTrain(const RunConfig& cfg);
void RunPredict(const RunConfig& cfg);
void RunSimulate(const RunConfig& cfg);
void RunSweep(const RunConfig& cfg);

// 0 ok, 2 config or data, 3 model, 4 protocol, 1 anything else.
int ExitCodeFor(const std::exception& e);

// Districts from the configured CSV files (merged by id) or generator.
std::vector<data::DistrictDataset> LoadData(const DataConfig& cfg, bool require_label = true);

}  // namespace fedboost::cli

#endif  // FEDBOOST_TOOLS_CLI_COMMANDS_H_
