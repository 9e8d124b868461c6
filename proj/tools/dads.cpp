// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: simulate, partition, sweep-occupancy, report.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "dads/config.hpp"
#include "dads/errors.hpp"
#include "dads/experiment.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

dads::ScenarioConfig config_or_default(const std::string& path) {
  return path.empty() ? dads::default_config() : dads::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed attack detection scheduling simulator"};
  app.require_subcommand(0, 1);

  bool print_default = false;
  std::string preset = "star100";
  app.add_flag("--print-default-config", print_default, "Print every configuration key with its default");
  app.add_option("--scenario", preset, "Preset used by --print-default-config")
      ->check(CLI::IsMember({"star100", "geometric500", "custom"}));

  auto* sim = app.add_subcommand("simulate", "Run an experiment and write its CSV bundle");
  std::string sim_config;
  std::optional<std::uint64_t> sim_seed;
  std::optional<int> sim_steps;
  std::optional<int> sim_threads;
  std::string sim_out;
  sim->add_option("--config", sim_config, "YAML configuration file")->check(CLI::ExistingFile);
  sim->add_option("--seed", sim_seed, "Master seed (overrides the config)");
  sim->add_option("--steps", sim_steps, "Horizon T (overrides the config)");
  sim->add_option("--threads", sim_threads, "Worker threads (overrides the config)");
  sim->add_option("--out", sim_out, "Output directory (overrides the config)");

  auto* part = app.add_subcommand("partition", "Compare partition strategies on the primary receiver");
  std::string part_config;
  std::string part_out;
  part->add_option("--config", part_config, "YAML configuration file")->check(CLI::ExistingFile);
  part->add_option("--out", part_out, "Output directory (overrides the config)");

  auto* occ = app.add_subcommand("sweep-occupancy", "Attacked-subset occupancy over the subset/attack grid");
  std::string occ_out = "out";
  std::uint64_t occ_seed = 1;
  std::size_t occ_draws = dads::kOccupancyDraws;
  occ->add_option("--out", occ_out, "Output directory");
  occ->add_option("--seed", occ_seed, "Master seed for the Monte Carlo draws");
  occ->add_option("--draws", occ_draws, "Monte Carlo draws per grid point")->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("report", "Regenerate plots and summary tables from CSVs");
  std::string rep_in;
  rep->add_option("--in", rep_in, "Directory holding a CSV bundle")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (print_default) {
      std::cout << dads::dump_config(dads::default_config(dads::parse_scenario(preset)));
      return 0;
    }
    if (*sim) {
      dads::ScenarioConfig cfg = config_or_default(sim_config);
      if (sim_seed) cfg.seed = *sim_seed;
      if (sim_steps) cfg.steps = *sim_steps;
      if (sim_threads) cfg.threads = *sim_threads;
      if (!sim_out.empty()) cfg.out_dir = sim_out;
      cfg.validate();
      const auto result = dads::run_experiment(cfg);
      dads::write_outputs(result, cfg.out_dir);
      std::cout << dads::regenerate_report(cfg.out_dir);
      return 0;
    }
    if (*part) {
      dads::ScenarioConfig cfg = config_or_default(part_config);
      if (!part_out.empty()) cfg.out_dir = part_out;
      std::cout << dads::partition_report(cfg, cfg.out_dir);
      return 0;
    }
    if (*occ) {
      dads::write_occupancy(dads::sweep_occupancy(occ_seed, 100, occ_draws), occ_out);
      std::cout << "wrote " << occ_out << "/occupancy.csv\n";
      return 0;
    }
    if (*rep) {
      std::cout << dads::regenerate_report(rep_in);
      return 0;
    }
    std::cout << app.help();
    return 0;
  } catch (const dads::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeExit;
  }
}
