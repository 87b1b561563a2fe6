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

#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "fedboost/data/csv.h"
#include "fedboost/data/synthetic.h"
#include "fedboost/error.h"
#include "fedboost/federation/partial_model.h"
#include "fedboost/federation/predict.h"
#include "fedboost/federation/protocol.h"
#include "fedboost/metrics/metrics.h"
#include "fedboost/scheduler/scheduler.h"

namespace fedboost::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using data::FormatDouble;

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output_dir: cannot write " + path.string());
  out << content;
}

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

std::string GanttCsv(const std::vector<scheduler::AllocationRecord>& records) {
  std::ostringstream out;
  out << "tree_id,node_id,party,kind,start_us,end_us\n";
  for (const auto& r : records) {
    out << r.tree_id << ',' << r.node_id << ',' << r.party << ',' << scheduler::ToString(r.kind)
        << ',' << r.start << ',' << r.end << '\n';
  }
  return out.str();
}

std::vector<double> IdleFractions(const std::vector<scheduler::AllocationRecord>& records,
                                  int parties, scheduler::Micros makespan) {
  std::vector<double> busy(static_cast<std::size_t>(parties), 0.0);
  for (const auto& r : records) busy[static_cast<std::size_t>(r.party - 1)] += static_cast<double>(r.end - r.start);
  std::vector<double> idle;
  for (double b : busy) idle.push_back(makespan > 0 ? 1.0 - b / static_cast<double>(makespan) : 0.0);
  return idle;
}

bool UniformFixed(const std::vector<scheduler::PartyClock>& clocks) {
  for (const auto& c : clocks) {
    if (c.tau1.kind() != scheduler::DurationModel::Kind::kFixed ||
        c.tau2.kind() != scheduler::DurationModel::Kind::kFixed ||
        c.tau1.mean() != clocks.front().tau1.mean() ||
        c.tau2.mean() != clocks.front().tau2.mean())
      return false;
  }
  return !clocks.empty();
}

json ToJsonValue(const std::string& text) { return json::parse(text); }

int PartyCount(const ScheduleConfig& sc) {
  if (sc.parties > 0) return sc.parties;
  if (!sc.per_party.empty()) return static_cast<int>(sc.per_party.size());
  throw ConfigError("schedule.parties: missing field");
}

}  // namespace

std::vector<data::DistrictDataset> LoadData(const DataConfig& cfg, bool require_label) {
  if (cfg.synthetic) return data::GenerateSynthetic(*cfg.synthetic);
  std::map<int, data::DistrictDataset> merged;
  data::CsvOptions opts;
  opts.require_label = require_label;
  for (const fs::path& p : cfg.paths) {
    if (!fs::exists(p)) throw ConfigError("data.paths: no such file " + p.string());
    for (data::DistrictDataset& ds : data::LoadCsv(p, opts)) {
      auto& into = merged[ds.district_id];
      into.district_id = ds.district_id;
      into.rows.insert(into.rows.end(), ds.rows.begin(), ds.rows.end());
    }
  }
  std::vector<data::DistrictDataset> out;
  for (auto& [id, ds] : merged) {
    std::sort(ds.rows.begin(), ds.rows.end(),
              [](const data::Row& a, const data::Row& b) { return a.timestamp < b.timestamp; });
    data::Validate(ds, require_label);
    out.push_back(std::move(ds));
  }
  return out;
}

void RunTrain(const RunConfig& cfg) {
  if (!cfg.data) throw ConfigError("data: missing section");
  std::vector<data::DistrictDataset> all = LoadData(*cfg.data);
  const data::SplitSpec split =
      cfg.data->split ? *cfg.data->split : data::SplitSpecByFraction(all, cfg.data->train_fraction);
  std::vector<data::DistrictDataset> train;
  std::vector<data::DistrictDataset> test;
  for (const auto& ds : all) {
    if (cfg.fcase == federation::FederationCase::kVertical && ds.district_id != cfg.target_district)
      continue;
    auto [tr, te] = data::SplitByTime(ds, split);
    train.push_back(std::move(tr));
    test.push_back(std::move(te));
  }
  if (train.empty())
    throw ConfigError("federation.target_district: no data for district " +
                      std::to_string(cfg.target_district));
  const data::LabelScaler scaler = data::FitLabelScaler(train);
  data::ApplyLabelScaler(scaler, train);
  data::ApplyLabelScaler(scaler, test);
  spdlog::info("case {}: {} districts, scaler mean {} std {}", federation::ToString(cfg.fcase),
               train.size(), scaler.mean, scaler.std);

  federation::FederationOptions opts;
  opts.encrypted = federation::IsEncrypted(cfg.fcase);
  opts.key_bits = cfg.key_bits;
  opts.crypto_seed = cfg.seed;
  opts.schedule_seed = cfg.seed;
  const int m = static_cast<int>(train.size());
  if (cfg.has_schedule) {
    opts.clocks = cfg.schedule.Clocks(m);
    opts.policy = cfg.schedule.policy;
  }
  federation::TrainResult result = federation::TrainFederated(
      federation::MakeInputs(train, cfg.fcase, cfg.target_district), cfg.params, opts);
  spdlog::info("trained {} trees, {} messages, virtual makespan {} s", cfg.params.n_trees,
               result.transcript.size(), scheduler::MicrosToSeconds(result.makespan));

  const fs::path out = cfg.output_dir;
  const fs::path models = out / "models";
  fs::create_directories(models);
  json parties = json::array();
  for (const auto* group : {&result.c_models, &result.d_models}) {
    for (const auto& model : *group) {
      federation::SavePartialModel(model, models / (model.party.ToString() + ".json"));
      parties.push_back(model.party.ToString());
    }
  }
  json manifest{{"case", federation::ToString(cfg.fcase)},
                {"districts", result.districts},
                {"parties", parties},
                {"scaler", {{"mean", scaler.mean}, {"std", scaler.std}}},
                {"uses_d_features", federation::UsesDFeatures(cfg.fcase)},
                {"key_bits", opts.encrypted ? json(cfg.key_bits) : json(nullptr)}};
  WriteFile(models / "manifest.json", manifest.dump(1) + "\n");

  // Test MSE after each tree through collaborative prediction.
  federation::CollaborativePredictor predictor(result.c_models, result.d_models);
  std::map<int, int> party_of;
  for (std::size_t k = 0; k < result.districts.size(); ++k)
    party_of[result.districts[k]] = static_cast<int>(k) + 1;
  const auto trees = static_cast<std::size_t>(cfg.params.n_trees);
  std::vector<double> sse(trees, 0.0);
  double baseline = 0.0;
  std::size_t n_test = 0;
  const bool with_d = federation::UsesDFeatures(cfg.fcase);
  for (const auto& ds : test) {
    const int k = party_of.at(ds.district_id);
    for (const data::Row& row : ds.rows) {
      const std::span<const double> d =
          with_d ? std::span<const double>(row.d) : std::span<const double>();
      std::vector<double> per_tree = predictor.PredictTrees(k, row.c, d);
      double acc = 0.0;
      for (std::size_t t = 0; t < trees; ++t) {
        acc += per_tree[t];
        sse[t] += (acc - row.label) * (acc - row.label);
      }
      baseline += row.label * row.label;
      ++n_test;
    }
  }
  std::vector<double> test_mse;
  for (double s : sse) test_mse.push_back(s / static_cast<double>(n_test));

  metrics::FairnessReport fairness = metrics::MakeFairnessReport(result.active_counts, m);
  metrics::EfficiencyReport efficiency;
  efficiency.makespan = scheduler::MicrosToSeconds(result.makespan);
  efficiency.idle_fraction = IdleFractions(result.schedule, m, result.makespan);
  std::size_t bytes = 0;
  for (const auto& e : result.transcript) bytes += e.byte_size;
  std::size_t n_train = 0;
  for (const auto& p : result.train_predictions) n_train += p.size();
  json metrics_doc{{"case", federation::ToString(cfg.fcase)},
                   {"train_mse", result.train_mse},
                   {"test_mse", test_mse},
                   {"baseline_test_mse", baseline / static_cast<double>(n_test)},
                   {"train_rows", n_train},
                   {"test_rows", n_test},
                   {"fairness", ToJsonValue(metrics::ToJson(fairness))},
                   {"efficiency", ToJsonValue(metrics::ToJson(efficiency))},
                   {"messages", result.transcript.size()},
                   {"message_bytes", bytes}};
  WriteFile(out / "metrics.json", metrics_doc.dump(1) + "\n");
  WriteFile(out / "gantt.csv", GanttCsv(result.schedule));
  WriteFile(out / "transcript.jsonl", federation::TranscriptToJsonl(result.transcript));

  std::ostringstream preds;
  preds << "district_id,timestamp,prediction\n";
  for (std::size_t k = 0; k < result.districts.size(); ++k) {
    for (std::size_t i = 0; i < result.aligned_ids[k].size(); ++i) {
      preds << result.districts[k] << ',' << result.aligned_ids[k][i] << ','
            << FormatDouble(scaler.Denormalize(result.train_predictions[k][i])) << '\n';
    }
  }
  WriteFile(out / "train_predictions.csv", preds.str());
  spdlog::info("final train MSE {}, test MSE {}", result.train_mse.back(), test_mse.back());
}

void RunPredict(const RunConfig& cfg) {
  const fs::path model_dir = cfg.predict.model_dir ? *cfg.predict.model_dir : cfg.output_dir / "models";
  const json manifest = ReadJsonFile(model_dir / "manifest.json");
  data::LabelScaler scaler;
  std::vector<int> districts;
  bool with_d = false;
  std::vector<federation::PartialModel> c_models;
  std::vector<federation::PartialModel> d_models;
  try {
    scaler.mean = manifest.at("scaler").at("mean").get<double>();
    scaler.std = manifest.at("scaler").at("std").get<double>();
    districts = manifest.at("districts").get<std::vector<int>>();
    with_d = manifest.at("uses_d_features").get<bool>();
    for (const json& p : manifest.at("parties")) {
      const auto name = p.get<std::string>();
      const fs::path path = model_dir / (name + ".json");
      if (!fs::exists(path)) throw ModelError("missing partial model " + path.string());
      federation::PartialModel model = federation::LoadPartialModel(path);
      if (model.party.ToString() != name)
        throw ModelError(path.string() + ": belongs to party " + model.party.ToString());
      (model.party.cls == federation::PartyClass::kC ? c_models : d_models).push_back(std::move(model));
    }
  } catch (const json::exception& e) {
    throw ModelError("manifest: " + std::string(e.what()));
  }
  if (c_models.size() != districts.size()) throw ModelError("manifest: missing C-party models");

  std::vector<data::DistrictDataset> inputs;
  if (cfg.predict.data) {
    if (!fs::exists(*cfg.predict.data))
      throw ConfigError("predict.data: no such file " + cfg.predict.data->string());
    data::CsvOptions opts;
    opts.require_label = false;
    inputs = data::LoadCsv(*cfg.predict.data, opts);
  } else if (cfg.data) {
    inputs = LoadData(*cfg.data, false);
  } else {
    throw ConfigError("predict.data: missing field");
  }

  std::map<int, int> party_of;
  for (std::size_t k = 0; k < districts.size(); ++k) party_of[districts[k]] = static_cast<int>(k) + 1;
  federation::CollaborativePredictor predictor(std::move(c_models), std::move(d_models));
  std::ostringstream out;
  out << "district_id,timestamp,prediction\n";
  std::size_t rows = 0;
  for (const auto& ds : inputs) {
    auto it = party_of.find(ds.district_id);
    if (it == party_of.end())
      throw ModelError("no partial model for district " + std::to_string(ds.district_id));
    for (const data::Row& row : ds.rows) {
      const std::span<const double> d =
          with_d ? std::span<const double>(row.d) : std::span<const double>();
      const double z = predictor.Predict(it->second, row.c, d);
      out << ds.district_id << ',' << row.timestamp << ',' << FormatDouble(scaler.Denormalize(z))
          << '\n';
      ++rows;
    }
  }
  WriteFile(cfg.output_dir / "predictions.csv", out.str());
  spdlog::info("wrote {} predictions", rows);
}

void RunSimulate(const RunConfig& cfg) {
  if (!cfg.has_schedule) throw ConfigError("schedule: missing section");
  const ScheduleConfig& sc = cfg.schedule;
  const int m = PartyCount(sc);
  const std::vector<scheduler::PartyClock> clocks = sc.Clocks(m);
  try {
    sc.policy.Validate(m);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("schedule.fixed_party: ") + e.what());
  }

  json trials = json::array();
  scheduler::ScheduleResult first;
  for (int i = 0; i < sc.trials; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    scheduler::ScheduleResult r = scheduler::RunSchedule(sc.layers, clocks, sc.policy, seed);
    trials.push_back({{"seed", seed},
                      {"makespan", scheduler::MicrosToSeconds(r.makespan)},
                      {"jain", metrics::JainIndex(std::span<const int>(r.active_counts))},
                      {"active_counts", r.active_counts}});
    if (i == 0) first = std::move(r);
  }

  const std::vector<std::vector<int>> epochs{first.active_counts};
  metrics::FairnessReport fairness = metrics::MakeFairnessReport(epochs, m);
  metrics::EfficiencyReport efficiency;
  efficiency.makespan = scheduler::MicrosToSeconds(first.makespan);
  efficiency.idle_fraction = IdleFractions(first.records, m, first.makespan);
  if (UniformFixed(clocks) && sc.policy.mode == scheduler::PolicyMode::kDynamic) {
    const double t1 = clocks.front().tau1.mean();
    const double t2 = clocks.front().tau2.mean();
    efficiency.formula_t_m = metrics::IdealTotalTime(sc.layers, m, t1, t2);
    const double t_inf = metrics::IdealTotalTime(sc.layers, 1 << sc.layers, t1, t2);
    efficiency.ratio = efficiency.makespan / t_inf;
  }
  json doc{{"parties", m},
           {"layers", sc.layers},
           {"mode", sc.policy.mode == scheduler::PolicyMode::kDynamic ? "dynamic" : "fixed"},
           {"conflict", sc.policy.conflict == scheduler::ConflictPolicy::kTaskOrder
                            ? "task_order"
                            : "breadth_first"},
           {"fairness", ToJsonValue(metrics::ToJson(fairness))},
           {"efficiency", ToJsonValue(metrics::ToJson(efficiency))},
           {"trials", trials}};
  WriteFile(cfg.output_dir / "simulation.json", doc.dump(1) + "\n");
  WriteFile(cfg.output_dir / "gantt.csv", GanttCsv(first.records));
  spdlog::info("simulated {} trial(s); first makespan {} s, jain {}", sc.trials,
               efficiency.makespan, fairness.jain);
}

void RunSweep(const RunConfig& cfg) {
  const SweepConfig& s = cfg.sweep;
  std::ostringstream out;
  out << "M,ideal_fairness,fixed_fairness,T_task_order,T_breadth_first\n";
  const auto tau1 = scheduler::DurationModel::Fixed(s.tau1);
  const auto tau2 = scheduler::DurationModel::Fixed(s.tau2);
  for (int m = 1; m <= s.max_parties; ++m) {
    scheduler::SchedulePolicy task_order;
    scheduler::SchedulePolicy breadth_first;
    breadth_first.conflict = scheduler::ConflictPolicy::kBreadthFirst;
    const auto clocks = scheduler::UniformClocks(m, tau1, tau2);
    const double t_task = scheduler::MicrosToSeconds(
        scheduler::RunSchedule(s.layers, clocks, task_order, cfg.seed).makespan);
    const double t_bfs = scheduler::MicrosToSeconds(
        scheduler::RunSchedule(s.layers, clocks, breadth_first, cfg.seed).makespan);
    out << m << ',' << FormatDouble(metrics::IdealFairness(s.layers, m)) << ','
        << FormatDouble(1.0 / m) << ',' << FormatDouble(t_task) << ',' << FormatDouble(t_bfs)
        << '\n';
  }
  WriteFile(cfg.output_dir / "sweep.csv", out.str());
  spdlog::info("wrote {} sweep rows", s.max_parties);
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const ModelError*>(&e)) return 3;
  if (dynamic_cast<const ProtocolError*>(&e) || dynamic_cast<const KeyError*>(&e) ||
      dynamic_cast<const ConsistencyError*>(&e))
    return 4;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const SplitError*>(&e) || dynamic_cast<const DegenerateLabelError*>(&e) ||
      dynamic_cast<const ArgumentError*>(&e) || dynamic_cast<const RangeError*>(&e) ||
      dynamic_cast<const UndefinedInputError*>(&e))
    return 2;
  return 1;
}

}  // namespace fedboost::cli
