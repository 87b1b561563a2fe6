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

#include "fedboost/data/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "fedboost/error.h"

namespace fedboost::data {
namespace {

constexpr std::size_t kColumns = 2 + kCFeatureCount + kDFeatureCount + 1;

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double ParseReal(std::string_view cell, std::size_t line, std::string_view column) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError("column " + std::string(column) + ": '" + std::string(cell) +
                         "' is not a finite number",
                     line);
  return v;
}

}  // namespace

const std::string& CsvHeader() {
  static const std::string kHeader = [] {
    std::string h = "district_id,timestamp";
    for (std::string_view n : CFeatureNames()) (h += ',') += n;
    for (std::string_view n : DFeatureNames()) (h += ',') += n;
    return h + ",label";
  }();
  return kHeader;
}

std::vector<DistrictDataset> ReadCsv(std::istream& in, const CsvOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("missing header row", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (line != CsvHeader()) throw ParseError("header does not match the district schema", 1);

  std::vector<std::string_view> names;
  names.emplace_back("district_id");
  names.emplace_back("timestamp");
  for (std::string_view n : CFeatureNames()) names.push_back(n);
  for (std::string_view n : DFeatureNames()) names.push_back(n);
  names.emplace_back("label");

  std::map<int, DistrictDataset> by_district;
  std::map<int, std::map<std::string, std::size_t>> seen;  // timestamp -> line
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      // Only trailing blank lines are tolerated.
      std::string rest;
      while (std::getline(in, rest)) {
        if (!rest.empty() && rest != "\r")
          throw ParseError("blank line inside data", line_no);
      }
      break;
    }
    const auto cells = SplitCells(line);
    if (cells.size() != kColumns)
      throw ParseError("expected " + std::to_string(kColumns) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool optional_label = i + 1 == kColumns && !options.require_label;
      if (cells[i].empty() && !optional_label)
        throw ValidationError("missing value in column " + std::string(names[i]), line_no);
    }

    int district = 0;
    {
      const char* end = cells[0].data() + cells[0].size();
      auto [ptr, ec] = std::from_chars(cells[0].data(), end, district);
      if (ec != std::errc() || ptr != end || district < 1)
        throw ParseError("district_id must be a positive integer", line_no);
    }
    Row row;
    row.timestamp = std::string(cells[1]);
    if (!IsIsoTimestamp(row.timestamp))
      throw ParseError("timestamp '" + row.timestamp + "' is not YYYY-MM-DDTHH:MM:SSZ", line_no);
    for (std::size_t c = 0; c < kCFeatureCount; ++c)
      row.c[c] = ParseReal(cells[2 + c], line_no, names[2 + c]);
    for (std::size_t c = 0; c < kDFeatureCount; ++c)
      row.d[c] = ParseReal(cells[2 + kCFeatureCount + c], line_no,
                           names[2 + kCFeatureCount + c]);
    const std::string_view label = cells[kColumns - 1];
    row.label = label.empty() ? std::nan("") : ParseReal(label, line_no, "label");

    auto [it, inserted] = seen[district].emplace(row.timestamp, line_no);
    if (!inserted)
      throw ValidationError("duplicate timestamp " + row.timestamp + " for district " +
                                std::to_string(district) + " (first on line " +
                                std::to_string(it->second) + ")",
                            line_no);
    DistrictDataset& d = by_district[district];
    d.district_id = district;
    d.rows.push_back(std::move(row));
  }

  std::vector<DistrictDataset> out;
  for (auto& [id, d] : by_district) {
    std::sort(d.rows.begin(), d.rows.end(),
              [](const Row& a, const Row& b) { return a.timestamp < b.timestamp; });
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<DistrictDataset> LoadCsv(const std::filesystem::path& path,
                                     const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return ReadCsv(in, options);
}

std::string FormatDouble(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

void WriteCsv(std::ostream& out, std::span<const DistrictDataset> datasets) {
  std::vector<const DistrictDataset*> order;
  for (const DistrictDataset& d : datasets) order.push_back(&d);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->district_id < b->district_id; });
  out << CsvHeader() << '\n';
  for (const DistrictDataset* d : order) {
    std::vector<const Row*> rows;
    for (const Row& r : d->rows) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(),
                     [](auto* a, auto* b) { return a->timestamp < b->timestamp; });
    for (const Row* r : rows) {
      out << d->district_id << ',' << r->timestamp;
      for (double v : r->c) out << ',' << FormatDouble(v);
      for (double v : r->d) out << ',' << FormatDouble(v);
      out << ',';
      if (!std::isnan(r->label)) out << FormatDouble(r->label);
      out << '\n';
    }
  }
}

void SaveCsv(const std::filesystem::path& path, std::span<const DistrictDataset> datasets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteCsv(out, datasets);
}

}  // namespace fedboost::data
