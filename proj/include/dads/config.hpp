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

#ifndef DADS_CONFIG_HPP
#define DADS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dads/attack.hpp"
#include "dads/partition.hpp"
#include "dads/selection.hpp"

namespace dads {

enum class Scenario { star100, geometric500, custom };
std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view s);

/// Detection regimes a run can simulate side by side on shared streams.
enum class RunCase { no_attack, dads, ads, no_detection };
std::string_view to_string(RunCase c);
RunCase parse_run_case(std::string_view s);

struct GeometricConfig {
  int nodes = 500;
  double area = 200.0;   // side of the square deployment region, m
  double radius = 30.0;  // communication range, m
  int retry_limit = 10000;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::star100;
  int steps = 500;
  std::uint64_t seed = 1;

  PartitionStrategy partition = PartitionStrategy::grassmann;
  int subsets = 4;  // used by the random and balanced strategies

  DadsConfig selection{.q = 40};   // q <= 0 means floor(|N_i| / 2)
  AttackConfig attack{.q = 40, .attacked_dims = {2, 3}};

  double consensus_weight = 0;  // 0 means 0.5 / max in-degree
  bool exclude_suspects = true;

  GeometricConfig geometric;
  std::vector<int> type_counts = {25, 25, 25, 25};  // custom star: neighbors per type

  std::vector<RunCase> cases = {RunCase::dads};
  bool ads_baseline = true;      // shadow centralized selection at the primary receiver
  bool paired_reference = false; // m2 counterfactual at round 2 of every step
  int threads = 1;

  std::string out_dir = "out";
  bool write_trajectories = true;
  bool write_attacks = true;
  bool write_selection = true;
  bool write_plots = true;

  // Throws ConfigError on inconsistent values.
  void validate() const;
};

/// Defaults for a scenario preset.
ScenarioConfig default_config(Scenario s = Scenario::star100);

/// Parses YAML text over the preset named by its `scenario` key. Unknown
/// keys are rejected.
ScenarioConfig parse_config(const std::string& yaml_text);
ScenarioConfig load_config(const std::string& path);
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace dads

#endif  // DADS_CONFIG_HPP
