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

// District CSV files: UTF-8, comma separated, mandatory header
//   district_id,timestamp,hour,temperature,wind_speed,humidity,barometer,
//   headcount,gender_ratio,age_b1..age_b5,wage_b1..wage_b3,
//   corr_industrial,corr_commercial,label

#ifndef FEDBOOST_DATA_CSV_H_
#define FEDBOOST_DATA_CSV_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fedboost/data/dataset.h"

namespace fedboost::data {

struct CsvOptions {
  // When false an empty label cell reads as NaN (prediction inputs).
  bool require_label = true;
};

const std::string& CsvHeader();

// Rows grouped by district (ascending) and sorted by timestamp. Throws
// ParseError (with line number) for malformed rows and ValidationError for
// missing cells or duplicate timestamps.
std::vector<DistrictDataset> ReadCsv(std::istream& in, const CsvOptions& options = {});
std::vector<DistrictDataset> LoadCsv(const std::filesystem::path& path,
                                     const CsvOptions& options = {});

// Canonical form: districts ascending, rows by timestamp, reals in shortest
// round-trip notation, "\n" line endings.
void WriteCsv(std::ostream& out, std::span<const DistrictDataset> datasets);
void SaveCsv(const std::filesystem::path& path, std::span<const DistrictDataset> datasets);

// Shortest decimal text that parses back to exactly `v`.
std::string FormatDouble(double v);

}  // namespace fedboost::data

#endif  // FEDBOOST_DATA_CSV_H_
