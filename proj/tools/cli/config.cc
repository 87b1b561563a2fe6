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

#include "cli/config.h"

#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "fedboost/error.h"

namespace fedboost::cli {
namespace {

using nlohmann::json;

// A JSON object together with its dotted path, for error messages.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) Fail("", "expected an object");
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& what) const {
    throw ConfigError(Path(key) + ": " + what);
  }
  std::string Path(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  bool Has(const std::string& key) const { return j_.contains(key); }
  Section Child(const std::string& key) const {
    if (!Has(key)) Fail(key, "missing section");
    return Section(j_.at(key), Path(key));
  }
  const json& Raw(const std::string& key) const { return j_.at(key); }

  double Number(const std::string& key, std::optional<double> fallback = {}) const {
    if (!Has(key)) {
      if (fallback) return *fallback;
      Fail(key, "missing field");
    }
    if (!j_.at(key).is_number()) Fail(key, "expected a number");
    return j_.at(key).get<double>();
  }
  std::int64_t Int(const std::string& key, std::optional<std::int64_t> fallback = {}) const {
    if (!Has(key)) {
      if (fallback) return *fallback;
      Fail(key, "missing field");
    }
    if (!j_.at(key).is_number_integer()) Fail(key, "expected an integer");
    return j_.at(key).get<std::int64_t>();
  }
  std::string String(const std::string& key, std::optional<std::string> fallback = {}) const {
    if (!Has(key)) {
      if (fallback) return *fallback;
      Fail(key, "missing field");
    }
    if (!j_.at(key).is_string()) Fail(key, "expected a string");
    return j_.at(key).get<std::string>();
  }

  void CheckKeys(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : j_.items()) {
      bool ok = false;
      for (std::string_view a : allowed) ok = ok || key == a;
      if (!ok) Fail(key, "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
};

template <typename F>
auto Guard(const Section& s, const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ArgumentError& e) {
    s.Fail(key, e.what());
  }
}

scheduler::DurationModel ParseDuration(const Section& parent, const std::string& key) {
  const json& v = parent.Raw(key);
  if (v.is_number()) {
    return Guard(parent, key, [&] { return scheduler::DurationModel::Fixed(v.get<double>()); });
  }
  Section s = parent.Child(key);
  s.CheckKeys({"fixed", "normal", "empirical"});
  if (s.Has("fixed"))
    return Guard(s, "fixed", [&] { return scheduler::DurationModel::Fixed(s.Number("fixed")); });
  if (s.Has("normal")) {
    Section n = s.Child("normal");
    n.CheckKeys({"mean", "std"});
    return Guard(n, "", [&] {
      return scheduler::DurationModel::Normal(n.Number("mean"), n.Number("std"));
    });
  }
  if (s.Has("empirical")) {
    const json& list = s.Raw("empirical");
    if (!list.is_array()) s.Fail("empirical", "expected an array of seconds");
    std::vector<double> values;
    for (const json& x : list) {
      if (!x.is_number()) s.Fail("empirical", "expected an array of seconds");
      values.push_back(x.get<double>());
    }
    return Guard(s, "empirical", [&] { return scheduler::DurationModel::Empirical(values); });
  }
  s.Fail("", "expected one of fixed, normal, empirical");
}

int IntIn(const Section& s, const std::string& key, std::int64_t lo, std::int64_t hi,
          std::int64_t fallback) {
  const std::int64_t v = s.Int(key, fallback);
  if (v < lo || v > hi)
    s.Fail(key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

void ParseData(const Section& s, RunConfig& cfg) {
  s.CheckKeys({"paths", "synthetic", "split"});
  DataConfig d;
  const bool has_paths = s.Has("paths");
  const bool has_synth = s.Has("synthetic");
  if (has_paths == has_synth) s.Fail("", "exactly one of paths or synthetic is required");
  if (has_paths) {
    const json& list = s.Raw("paths");
    if (!list.is_array() || list.empty()) s.Fail("paths", "expected a non-empty array of paths");
    for (const json& p : list) {
      if (!p.is_string()) s.Fail("paths", "expected a non-empty array of paths");
      d.paths.emplace_back(p.get<std::string>());
    }
  } else {
    Section y = s.Child("synthetic");
    y.CheckKeys({"districts", "rows", "seed", "start", "noise"});
    data::SyntheticSpec spec;
    spec.districts = IntIn(y, "districts", 1, 1000, spec.districts);
    spec.rows = IntIn(y, "rows", 1, 10'000'000, spec.rows);
    spec.seed = static_cast<std::uint64_t>(y.Int("seed", static_cast<std::int64_t>(cfg.seed)));
    spec.start = y.String("start", spec.start);
    spec.noise = y.Number("noise", spec.noise);
    if (!data::IsIsoTimestamp(spec.start)) y.Fail("start", "expected YYYY-MM-DDTHH:MM:SSZ");
    if (!(spec.noise >= 0.0)) y.Fail("noise", "must be >= 0");
    d.synthetic = spec;
  }
  if (s.Has("split")) {
    Section sp = s.Child("split");
    sp.CheckKeys({"train_fraction", "train_begin", "train_end", "test_begin", "test_end"});
    if (sp.Has("train_fraction")) {
      d.train_fraction = sp.Number("train_fraction");
      if (!(d.train_fraction > 0.0 && d.train_fraction < 1.0))
        sp.Fail("train_fraction", "must be in (0, 1)");
    } else {
      data::SplitSpec spec{sp.String("train_begin"), sp.String("train_end"),
                           sp.String("test_begin"), sp.String("test_end")};
      Guard(sp, "", [&] {
        spec.Validate();
        return 0;
      });
      d.split = spec;
    }
  }
  cfg.data = std::move(d);
}

void ParseParams(const Section& s, RunConfig& cfg) {
  s.CheckKeys({"eta", "lambda", "n_trees", "max_depth", "n_bins", "min_gain"});
  gbdt::TrainParams& p = cfg.params;
  p.eta = s.Number("eta", p.eta);
  p.lambda = s.Number("lambda", p.lambda);
  p.n_trees = IntIn(s, "n_trees", 1, 100000, p.n_trees);
  p.max_depth = IntIn(s, "max_depth", 1, 24, p.max_depth);
  p.n_bins = IntIn(s, "n_bins", 2, 65535, p.n_bins);
  p.min_gain = s.Number("min_gain", p.min_gain);
  Guard(s, "", [&] {
    p.Validate();
    return 0;
  });
}

void ParseSchedule(const Section& s, RunConfig& cfg) {
  s.CheckKeys({"mode", "conflict", "fixed_party", "tau1", "tau2", "parties", "per_party",
               "layers", "trials"});
  ScheduleConfig& sc = cfg.schedule;
  const std::string mode = s.String("mode", "dynamic");
  if (mode == "dynamic") {
    sc.policy.mode = scheduler::PolicyMode::kDynamic;
  } else if (mode == "fixed") {
    sc.policy.mode = scheduler::PolicyMode::kFixed;
  } else {
    s.Fail("mode", "expected \"dynamic\" or \"fixed\"");
  }
  const std::string conflict = s.String("conflict", "task_order");
  if (conflict == "task_order") {
    sc.policy.conflict = scheduler::ConflictPolicy::kTaskOrder;
  } else if (conflict == "breadth_first") {
    sc.policy.conflict = scheduler::ConflictPolicy::kBreadthFirst;
  } else {
    s.Fail("conflict", "expected \"task_order\" or \"breadth_first\"");
  }
  sc.policy.fixed_party = IntIn(s, "fixed_party", 1, 100000, 1);
  if (s.Has("tau1")) sc.tau1 = ParseDuration(s, "tau1");
  if (s.Has("tau2")) sc.tau2 = ParseDuration(s, "tau2");
  if (s.Has("per_party")) {
    const json& list = s.Raw("per_party");
    if (!list.is_array() || list.empty()) s.Fail("per_party", "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section entry(list[i], s.Path("per_party") + "[" + std::to_string(i) + "]");
      entry.CheckKeys({"tau1", "tau2"});
      sc.per_party.emplace_back(entry.Has("tau1") ? ParseDuration(entry, "tau1") : sc.tau1,
                                entry.Has("tau2") ? ParseDuration(entry, "tau2") : sc.tau2);
    }
  }
  sc.parties = IntIn(s, "parties", 0, 100000, 0);
  if (sc.parties != 0 && !sc.per_party.empty() &&
      sc.parties != static_cast<int>(sc.per_party.size()))
    s.Fail("parties", "disagrees with the length of per_party");
  sc.layers = IntIn(s, "layers", 1, 24, sc.layers);
  sc.trials = IntIn(s, "trials", 1, 1'000'000, sc.trials);
  cfg.has_schedule = true;
}

}  // namespace

std::vector<scheduler::PartyClock> ScheduleConfig::Clocks(int count) const {
  if (!per_party.empty() && static_cast<int>(per_party.size()) != count)
    throw ConfigError("schedule.per_party: has " + std::to_string(per_party.size()) +
                      " entries for " + std::to_string(count) + " parties");
  std::vector<scheduler::PartyClock> clocks;
  for (int m = 1; m <= count; ++m) {
    scheduler::PartyClock c;
    c.party_id = m;
    if (per_party.empty()) {
      c.tau1 = tau1;
      c.tau2 = tau2;
    } else {
      c.tau1 = per_party[static_cast<std::size_t>(m - 1)].first;
      c.tau2 = per_party[static_cast<std::size_t>(m - 1)].second;
    }
    clocks.push_back(std::move(c));
  }
  return clocks;
}

RunConfig ParseConfig(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<root>: not valid JSON: ") + e.what());
  }
  Section root(doc, "");
  root.CheckKeys({"seed", "output_dir", "data", "params", "federation", "schedule", "crypto",
                  "sweep", "predict"});
  RunConfig cfg;
  const std::int64_t seed = root.Int("seed", 42);
  if (seed < 0) root.Fail("seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.output_dir = root.String("output_dir", cfg.output_dir.string());
  if (root.Has("data")) ParseData(root.Child("data"), cfg);
  if (root.Has("params")) ParseParams(root.Child("params"), cfg);
  if (root.Has("federation")) {
    Section f = root.Child("federation");
    f.CheckKeys({"case", "target_district"});
    const json& c = f.Raw("case");
    const std::string text = c.is_number_integer() ? std::to_string(c.get<int>())
                             : c.is_string()       ? c.get<std::string>()
                                                   : std::string();
    cfg.fcase = Guard(f, "case", [&] { return federation::ParseCase(text); });
    if (f.Has("target_district")) cfg.target_district = IntIn(f, "target_district", 1, 1000000, 1);
    if (cfg.fcase == federation::FederationCase::kVertical && cfg.target_district == 0)
      f.Fail("target_district", "required for the vertical case");
  }
  if (root.Has("schedule")) ParseSchedule(root.Child("schedule"), cfg);
  if (root.Has("crypto")) {
    Section c = root.Child("crypto");
    c.CheckKeys({"key_bits"});
    cfg.key_bits = static_cast<int>(c.Int("key_bits", cfg.key_bits));
    if (cfg.key_bits != 512 && cfg.key_bits != 1024 && cfg.key_bits != 2048)
      c.Fail("key_bits", "must be 512, 1024 or 2048");
  }
  if (root.Has("sweep")) {
    Section s = root.Child("sweep");
    s.CheckKeys({"layers", "max_parties", "tau1", "tau2"});
    cfg.sweep.layers = IntIn(s, "layers", 1, 24, cfg.sweep.layers);
    cfg.sweep.max_parties = IntIn(s, "max_parties", 1, 4096, cfg.sweep.max_parties);
    cfg.sweep.tau1 = s.Number("tau1", cfg.sweep.tau1);
    cfg.sweep.tau2 = s.Number("tau2", cfg.sweep.tau2);
    if (!(cfg.sweep.tau1 > 0.0)) s.Fail("tau1", "must be positive");
    if (!(cfg.sweep.tau2 > 0.0)) s.Fail("tau2", "must be positive");
  }
  if (root.Has("predict")) {
    Section p = root.Child("predict");
    p.CheckKeys({"model_dir", "data"});
    if (p.Has("model_dir")) cfg.predict.model_dir = p.String("model_dir");
    if (p.Has("data")) cfg.predict.data = p.String("data");
  }
  return cfg;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<root>: cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

}  // namespace fedboost::cli
