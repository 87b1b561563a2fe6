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

#ifndef FEDBOOST_GBDT_MODEL_IO_H_
#define FEDBOOST_GBDT_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "fedboost/gbdt/gbdt.h"

namespace fedboost::gbdt {

// JSON document {base_score, params, trees: [{nodes: [...]}]}. Reals are
// written in shortest round-trip form, so parsing restores them bit for bit.
// Sample sets are training-time state and are not serialized.
std::string ModelToJson(const Ensemble& ensemble);
// Throws ModelError on malformed documents.
Ensemble ModelFromJson(std::string_view text);

void SaveModel(const Ensemble& ensemble, const std::filesystem::path& path);
Ensemble LoadModel(const std::filesystem::path& path);

}  // namespace fedboost::gbdt

#endif  // FEDBOOST_GBDT_MODEL_IO_H_
