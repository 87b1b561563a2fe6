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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.h"
#include "cli/config.h"
#include "fedboost/data/csv.h"
#include "fedboost/data/synthetic.h"
#include "fedboost/error.h"

namespace fedboost::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path FreshDir(const std::string& name) {
  // Each ctest entry is its own process; keep their scratch dirs apart.
  const fs::path dir = fs::temp_directory_path() /
                       ("fedboost_cli_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void Spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Runs the binary; returns its exit status and stderr.
std::pair<int, std::string> Cli(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string("FEDBOOST_LOG=error ") + FEDBOOST_CLI_PATH + " " + args +
                          " 2>" + err.string() + " >/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(err)};
}

std::map<std::string, double> ReadPredictions(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "district_id,timestamp,prediction");
  std::map<std::string, double> out;
  while (std::getline(in, line)) {
    const auto c = line.rfind(',');
    out[line.substr(0, c)] = std::stod(line.substr(c + 1));
  }
  return out;
}

std::string ConfigErrorOf(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, ErrorsCarryFieldPaths) {
  EXPECT_EQ(ConfigErrorOf(R"({"params":{"etaa":0.1}})").rfind("params.etaa:", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"params":{"eta":"fast"}})").rfind("params.eta:", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"params":{"eta":2}})").rfind("params", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"federation":{"case":"vertical"}})")
                .rfind("federation.target_district:", 0),
            0u);
  EXPECT_EQ(ConfigErrorOf(R"({"federation":{"case":"sideways"}})").rfind("federation.case:", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"data":{}})").rfind("data:", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"data":{"paths":["a"],"synthetic":{}}})").rfind("data:", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"data":{"synthetic":{"rows":0}}})").rfind("data.synthetic.rows:", 0),
            0u);
  EXPECT_EQ(ConfigErrorOf(R"({"schedule":{"tau2":{"normal":{"mean":-1,"std":1}}}})")
                .rfind("schedule.tau2", 0),
            0u);
  EXPECT_EQ(ConfigErrorOf(R"({"schedule":{"per_party":[{"tau9":1}]}})")
                .rfind("schedule.per_party[0].tau9:", 0),
            0u);
  EXPECT_EQ(ConfigErrorOf(R"({"crypto":{"key_bits":100}})").rfind("crypto.key_bits:", 0), 0u);
  EXPECT_EQ(ConfigErrorOf("{not json").rfind("<root>", 0), 0u);
  EXPECT_EQ(ConfigErrorOf(R"({"colour":1})").rfind("colour:", 0), 0u);
}

TEST(Config, ParsesFullDocument) {
  const RunConfig c = ParseConfig(R"({
    "seed": 7, "output_dir": "o",
    "data": {"synthetic": {"districts": 2, "rows": 30}, "split": {"train_fraction": 0.5}},
    "params": {"eta": 0.5, "lambda": 2, "n_trees": 3, "max_depth": 3, "n_bins": 8},
    "federation": {"case": "hybrid-encrypted"},
    "schedule": {"mode": "fixed", "fixed_party": 2, "conflict": "breadth_first",
                 "tau1": 2, "tau2": {"normal": {"mean": 7, "std": 1}},
                 "per_party": [{"tau1": {"fixed": 1}}, {"tau2": {"empirical": [1, 2]}}]},
    "crypto": {"key_bits": 1024}})");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.output_dir, "o");
  ASSERT_TRUE(c.data && c.data->synthetic);
  EXPECT_EQ(c.data->synthetic->districts, 2);
  EXPECT_EQ(c.data->synthetic->seed, 7u);
  EXPECT_EQ(c.data->train_fraction, 0.5);
  EXPECT_EQ(c.params.n_bins, 8);
  EXPECT_EQ(c.fcase, federation::FederationCase::kHybridEncrypted);
  EXPECT_EQ(c.schedule.policy.mode, scheduler::PolicyMode::kFixed);
  EXPECT_EQ(c.schedule.policy.fixed_party, 2);
  EXPECT_EQ(c.schedule.tau2.kind(), scheduler::DurationModel::Kind::kNormal);
  ASSERT_EQ(c.schedule.per_party.size(), 2u);
  EXPECT_EQ(c.schedule.per_party[1].second.kind(), scheduler::DurationModel::Kind::kEmpirical);
  EXPECT_EQ(c.key_bits, 1024);
}

TEST(ExitCodes, CategoriesMapToCodes) {
  EXPECT_EQ(ExitCodeFor(ConfigError("x")), 2);
  EXPECT_EQ(ExitCodeFor(ParseError("x", 3)), 2);
  EXPECT_EQ(ExitCodeFor(ValidationError("x", 3)), 2);
  EXPECT_EQ(ExitCodeFor(SplitError("x")), 2);
  EXPECT_EQ(ExitCodeFor(ModelError("x")), 3);
  EXPECT_EQ(ExitCodeFor(ProtocolError("x")), 4);
  EXPECT_EQ(ExitCodeFor(AlignmentError("x")), 4);
  EXPECT_EQ(ExitCodeFor(std::runtime_error("x")), 1);
}

TEST(Binary, MissingDataPathExitsWithTwo) {
  const fs::path dir = FreshDir("missing_data");
  Spit(dir / "c.json", R"({"data":{"paths":["/nonexistent/d.csv"]},"output_dir":")" +
                           (dir / "out").string() + "\"}");
  const auto [code, err] = Cli("train --config " + (dir / "c.json").string(), dir);
  EXPECT_EQ(code, 2);
  EXPECT_NE(err.find("data.paths"), std::string::npos) << err;
}

TEST(Binary, UsageErrorsAndBadConfigs) {
  const fs::path dir = FreshDir("usage");
  EXPECT_EQ(Cli("train", dir).first, 2);
  EXPECT_EQ(Cli("train --config /nonexistent.json", dir).first, 2);
  Spit(dir / "bad.json", R"({"params":{"n_trees":0}})");
  const auto [code, err] = Cli("train --config " + (dir / "bad.json").string(), dir);
  EXPECT_EQ(code, 2);
  EXPECT_NE(err.find("params.n_trees"), std::string::npos) << err;
}

class TrainedModel : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(FreshDir("trained"));
    data::SyntheticSpec spec;
    spec.districts = 3;
    spec.rows = 96;
    spec.seed = 5;
    data::SaveCsv(*dir_ / "data.csv", data::GenerateSynthetic(spec));
    json cfg{{"seed", 5},
             {"output_dir", (*dir_ / "out").string()},
             {"data", {{"paths", {(*dir_ / "data.csv").string()}}}},
             {"params", {{"n_trees", 6}, {"max_depth", 4}, {"n_bins", 16}}},
             {"federation", {{"case", "hybrid"}}},
             {"predict", {{"data", (*dir_ / "data.csv").string()}}}};
    Spit(*dir_ / "c.json", cfg.dump());
    status_ = Cli("train --config " + (*dir_ / "c.json").string(), *dir_).first;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static fs::path* dir_;
  static int status_;
};

fs::path* TrainedModel::dir_ = nullptr;
int TrainedModel::status_ = -1;

TEST_F(TrainedModel, WritesAllOutputs) {
  ASSERT_EQ(status_, 0);
  const fs::path out = *dir_ / "out";
  for (const char* f : {"metrics.json", "gantt.csv", "transcript.jsonl", "train_predictions.csv",
                        "models/manifest.json", "models/C1.json", "models/C3.json",
                        "models/D1.json", "models/D3.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  std::istringstream gantt(Slurp(out / "gantt.csv"));
  std::string header;
  std::getline(gantt, header);
  EXPECT_EQ(header, "tree_id,node_id,party,kind,start_us,end_us");
}

TEST_F(TrainedModel, TrainMseIsMonotone) {
  ASSERT_EQ(status_, 0);
  const json m = json::parse(Slurp(*dir_ / "out" / "metrics.json"));
  const auto train = m.at("train_mse").get<std::vector<double>>();
  ASSERT_EQ(train.size(), 6u);
  for (std::size_t s = 1; s < train.size(); ++s) EXPECT_LE(train[s], train[s - 1] + 1e-12);
  EXPECT_EQ(m.at("test_mse").size(), 6u);
  EXPECT_TRUE(m.contains("baseline_test_mse"));
  EXPECT_TRUE(m.at("fairness").contains("jain"));
}

TEST_F(TrainedModel, PredictReproducesTrainingPredictions) {
  ASSERT_EQ(status_, 0);
  const fs::path pred_dir = *dir_ / "pred";
  json cfg = json::parse(Slurp(*dir_ / "c.json"));
  cfg["predict"]["model_dir"] = (*dir_ / "out" / "models").string();
  Spit(*dir_ / "p.json", cfg.dump());
  ASSERT_EQ(
      Cli("predict --config " + (*dir_ / "p.json").string() + " --out " + pred_dir.string(), *dir_)
          .first,
      0);
  const auto trained = ReadPredictions(*dir_ / "out" / "train_predictions.csv");
  const auto predicted = ReadPredictions(pred_dir / "predictions.csv");
  EXPECT_EQ(predicted.size(), 3u * 96u);
  ASSERT_FALSE(trained.empty());
  for (const auto& [key, value] : trained) {
    ASSERT_TRUE(predicted.contains(key)) << key;
    EXPECT_NEAR(predicted.at(key), value, 1e-9) << key;
  }
}

TEST_F(TrainedModel, EmptyInputGivesHeaderOnly) {
  ASSERT_EQ(status_, 0);
  const fs::path d = *dir_ / "empty";
  fs::create_directories(d);
  Spit(d / "empty.csv", data::CsvHeader() + "\n");
  json cfg{{"output_dir", d.string()},
           {"predict",
            {{"model_dir", (*dir_ / "out" / "models").string()}, {"data", (d / "empty.csv").string()}}}};
  Spit(d / "c.json", cfg.dump());
  ASSERT_EQ(Cli("predict --config " + (d / "c.json").string(), d).first, 0);
  EXPECT_EQ(Slurp(d / "predictions.csv"), "district_id,timestamp,prediction\n");
}

TEST_F(TrainedModel, CorruptOrMissingModelExitsWithThree) {
  ASSERT_EQ(status_, 0);
  const fs::path d = *dir_ / "corrupt";
  fs::remove_all(d);
  fs::create_directories(d / "models");
  fs::copy(*dir_ / "out" / "models", d / "models", fs::copy_options::recursive);
  json cfg{{"output_dir", d.string()},
           {"predict", {{"model_dir", (d / "models").string()}, {"data", (*dir_ / "data.csv").string()}}}};
  Spit(d / "c.json", cfg.dump());
  Spit(d / "models" / "C2.json", "{\"party\": \"C2\", \"trees\": [");
  EXPECT_EQ(Cli("predict --config " + (d / "c.json").string(), d).first, 3);
  fs::remove(d / "models" / "C2.json");
  EXPECT_EQ(Cli("predict --config " + (d / "c.json").string(), d).first, 3);
}

TEST_F(TrainedModel, SeededRunsAreReproducible) {
  ASSERT_EQ(status_, 0);
  const fs::path again = *dir_ / "again";
  ASSERT_EQ(Cli("train --config " + (*dir_ / "c.json").string() + " --out " + again.string(), *dir_)
                .first,
            0);
  for (const char* f : {"metrics.json", "gantt.csv", "transcript.jsonl", "train_predictions.csv",
                        "models/C1.json", "models/D2.json", "models/manifest.json"})
    EXPECT_EQ(Slurp(*dir_ / "out" / f), Slurp(again / f)) << f;
}

json Simulate(const fs::path& dir, const json& schedule, int seed = 1) {
  const json cfg{{"seed", seed}, {"output_dir", dir.string()}, {"schedule", schedule}};
  Spit(dir / "c.json", cfg.dump());
  EXPECT_EQ(Cli("simulate --config " + (dir / "c.json").string(), dir).first, 0);
  return json::parse(Slurp(dir / "simulation.json"));
}

TEST(Simulate, UniformDurationsGiveFormulaMakespan) {
  const fs::path dir = FreshDir("sim_uniform");
  const json doc = Simulate(dir, {{"parties", 4}, {"layers", 5}, {"tau1", 2}, {"tau2", 7}});
  EXPECT_EQ(doc.at("efficiency").at("makespan").get<double>(), 125.0);
  EXPECT_EQ(doc.at("efficiency").at("formula_T_M").get<double>(), 125.0);
  EXPECT_TRUE(fs::exists(dir / "gantt.csv"));
}

TEST(Simulate, FixedPolicyFairnessIsOneOverM) {
  const fs::path dir = FreshDir("sim_fixed");
  const json doc = Simulate(dir, {{"parties", 10}, {"layers", 5}, {"mode", "fixed"}});
  EXPECT_NEAR(doc.at("fairness").at("jain").get<double>(), 0.1, 1e-12);
}

TEST(Simulate, HeterogeneousTrialsUseSuccessiveSeeds) {
  const fs::path dir = FreshDir("sim_trials");
  json per_party = json::array();
  for (int m = 1; m <= 4; ++m)
    per_party.push_back({{"tau1", {{"normal", {{"mean", m}, {"std", 0.3}}}}},
                         {"tau2", {{"normal", {{"mean", 3 * m}, {"std", 1}}}}}});
  const json doc = Simulate(dir, {{"per_party", per_party}, {"layers", 4}, {"trials", 5}}, 10);
  ASSERT_EQ(doc.at("trials").size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(doc.at("trials")[i].at("seed").get<int>(), 10 + i);
  EXPECT_TRUE(doc.at("efficiency").at("formula_T_M").is_null());
}

TEST(Sweep, ThirtyTwoRowsWithExpectedShape) {
  const fs::path dir = FreshDir("sweep");
  Spit(dir / "c.json", json{{"output_dir", dir.string()}}.dump());
  ASSERT_EQ(Cli("sweep --config " + (dir / "c.json").string(), dir).first, 0);
  std::istringstream in(Slurp(dir / "sweep.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "M,ideal_fairness,fixed_fairness,T_task_order,T_breadth_first");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v[0], rows);
    EXPECT_DOUBLE_EQ(v[2], 1.0 / rows);
    EXPECT_LE(v[3], v[4]);
    if (rows == 32) { EXPECT_NEAR(v[1], 0.3618, 1e-4); }
    if (rows == 1) { EXPECT_EQ(v[3], 279.0); }
    if (rows == 4) { EXPECT_EQ(v[3], 125.0); }
  }
  EXPECT_EQ(rows, 32);
}

TEST(Cases, EncryptedAndPlainHybridAgree) {
  const fs::path dir = FreshDir("cases");
  auto run = [&](const std::string& fcase) {
    const fs::path out = dir / fcase;
    json cfg{{"seed", 3},
             {"output_dir", out.string()},
             {"data", {{"synthetic", {{"districts", 2}, {"rows", 96}}}}},
             {"params", {{"n_trees", 4}}},
             {"federation", {{"case", fcase}}}};
    Spit(dir / (fcase + ".json"), cfg.dump());
    EXPECT_EQ(Cli("train --config " + (dir / (fcase + ".json")).string(), dir).first, 0);
    return json::parse(Slurp(out / "metrics.json"));
  };
  const json plain = run("hybrid");
  const json enc = run("hybrid_encrypted");
  EXPECT_LT(std::abs(plain.at("test_mse").back().get<double>() -
                     enc.at("test_mse").back().get<double>()),
            1e-3);
}

TEST(Cases, VerticalWithUnknownDistrictIsAConfigError) {
  const fs::path dir = FreshDir("vertical");
  json cfg{{"output_dir", (dir / "v").string()},
           {"data", {{"synthetic", {{"districts", 2}, {"rows", 48}}}}},
           {"federation", {{"case", "vertical"}, {"target_district", 9}}}};
  Spit(dir / "v.json", cfg.dump());
  const auto [code, err] = Cli("train --config " + (dir / "v.json").string(), dir);
  EXPECT_EQ(code, 2);
  EXPECT_NE(err.find("federation.target_district"), std::string::npos) << err;
}

TEST(Cases, AliasesParse) {
  using federation::FederationCase;
  auto parsed = [](const std::string& name) {
    return ParseConfig(json{{"federation", {{"case", name}}}}.dump()).fcase;
  };
  EXPECT_EQ(parsed("hybrid-plain"), FederationCase::kHybrid);
  EXPECT_EQ(parsed("hybrid_plain"), FederationCase::kHybrid);
  EXPECT_EQ(parsed("hybrid-encrypted"), FederationCase::kHybridEncrypted);
  EXPECT_EQ(parsed("horizontal"), FederationCase::kHorizontal);
}

}  // namespace
}  // namespace fedboost::cli
