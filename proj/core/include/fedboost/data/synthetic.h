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

#ifndef FEDBOOST_DATA_SYNTHETIC_H_
#define FEDBOOST_DATA_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fedboost/data/dataset.h"

namespace fedboost::data {

struct SyntheticSpec {
  int districts = 4;
  int rows = 480;  // hourly rows per district
  std::uint64_t seed = 42;
  std::string start = "2026-01-05T00:00:00Z";  // must fall on the hour
  double noise = 0.25;  // label noise in units of the raw label's spread
};

// Hourly power load for each district. Weather is shared across districts and
// explains part of the load; district character (zone mix, population) and an
// unobserved hourly crowd level move both the demographic statistics and
// the load, so demographic features carry signal weather cannot supply. The
// process is stationary in time. Identical specs give identical output.
std::vector<DistrictDataset> GenerateSynthetic(const SyntheticSpec& spec);

// Hourly ISO timestamp `hours` after `start`.
std::string AddHours(const std::string& start, std::int64_t hours);

}  // namespace fedboost::data

#endif  // FEDBOOST_DATA_SYNTHETIC_H_
