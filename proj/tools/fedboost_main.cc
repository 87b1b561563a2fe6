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

#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli/commands.h"
#include "cli/config.h"

namespace {

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("fedboost");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("FEDBOOST_LOG");
  const std::string level = env == nullptr ? "info" : env;
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::info);
    if (level != "info") spdlog::warn("FEDBOOST_LOG={} not recognized; using info", level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Hybrid federated gradient boosting and active-party scheduling"};
  app.require_subcommand(1);
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required();
    sub->add_option("--seed", seed, "Override the configured seed");
    sub->add_option("--out", out_dir, "Override the output directory");
    return sub;
  };
  CLI::App* train = add("train", "Train a federated model for the configured case");
  CLI::App* predict = add("predict", "Predict with trained partial models");
  CLI::App* simulate = add("simulate", "Simulate active-party scheduling");
  CLI::App* sweep = add("sweep", "Tabulate fairness and makespan against party count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fedboost::cli::RunConfig cfg = fedboost::cli::LoadConfig(config_path);
    for (CLI::App* sub : {train, predict, simulate, sweep}) {
      if (sub->get_option("--seed")->count() > 0 && sub->parsed()) cfg.seed = seed;
      if (sub->get_option("--out")->count() > 0 && sub->parsed()) cfg.output_dir = out_dir;
    }
    if (cfg.data && cfg.data->synthetic && train->parsed() &&
        train->get_option("--seed")->count() > 0)
      cfg.data->synthetic->seed = seed;
    if (train->parsed()) fedboost::cli::RunTrain(cfg);
    if (predict->parsed()) fedboost::cli::RunPredict(cfg);
    if (simulate->parsed()) fedboost::cli::RunSimulate(cfg);
    if (sweep->parsed()) fedboost::cli::RunSweep(cfg);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return fedboost::cli::ExitCodeFor(e);
  }
  return 0;
}
