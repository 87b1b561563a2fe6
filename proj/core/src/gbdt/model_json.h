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

#ifndef FEDBOOST_SRC_GBDT_MODEL_JSON_H_
#define FEDBOOST_SRC_GBDT_MODEL_JSON_H_

#include <string>

#include <nlohmann/json.hpp>

#include "fedboost/gbdt/gbdt.h"

namespace fedboost::gbdt::internal {

nlohmann::json ParamsToJson(const TrainParams& params);
TrainParams ParamsFromJson(const nlohmann::json& j);

// Throws ModelError naming `what` when `j` lacks `key` or it has the wrong type.
const nlohmann::json& Require(const nlohmann::json& j, const char* key,
                              const std::string& what);
double RequireNumber(const nlohmann::json& j, const char* key,
                     const std::string& what);
int RequireInt(const nlohmann::json& j, const char* key, const std::string& what);

}  // namespace fedboost::gbdt::internal

#endif  // FEDBOOST_SRC_GBDT_MODEL_JSON_H_
