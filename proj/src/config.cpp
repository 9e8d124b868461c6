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

#include "dads/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "dads/errors.hpp"
#include "dads/io.hpp"

namespace dads {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::star100: return "star100";
    case Scenario::geometric500: return "geometric500";
    case Scenario::custom: return "custom";
  }
  return "?";
}

Scenario parse_scenario(std::string_view s) {
  for (auto v : {Scenario::star100, Scenario::geometric500, Scenario::custom}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown scenario '" + std::string(s) + "'");
}

std::string_view to_string(RunCase c) {
  switch (c) {
    case RunCase::no_attack: return "no_attack";
    case RunCase::dads: return "dads";
    case RunCase::ads: return "ads";
    case RunCase::no_detection: return "no_detection";
  }
  return "?";
}

RunCase parse_run_case(std::string_view s) {
  for (auto v : {RunCase::no_attack, RunCase::dads, RunCase::ads, RunCase::no_detection}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown case '" + std::string(s) + "'");
}

void ScenarioConfig::validate() const {
  require<ConfigError>(steps >= 1, "steps must be at least 1");
  require<ConfigError>(subsets >= 1, "partition.subsets must be at least 1");
  require<ConfigError>(threads >= 1, "experiment.threads must be at least 1");
  require<ConfigError>(!cases.empty(), "experiment.cases must name at least one case");
  require<ConfigError>(consensus_weight >= 0, "estimator.consensus_weight must be nonnegative");
  require<ConfigError>(attack.noise_bound > 0, "attack.noise_bound must be positive");
  require<ConfigError>(!attack.attacked_dims.empty(), "attack.dims must not be empty");
  for (Index d : attack.attacked_dims) require<ConfigError>(d >= 0 && d < 4, "attack.dims out of range");
  require<ConfigError>(geometric.nodes >= 2, "geometric.nodes must be at least 2");
  require<ConfigError>(geometric.area > 0 && geometric.radius > 0, "geometric sizes must be positive");
  require<ConfigError>(geometric.retry_limit >= 0, "geometric.retry_limit must be nonnegative");
  require<ConfigError>(type_counts.size() == 4, "custom.type_counts needs one entry per sensor type");
  for (int c : type_counts) require<ConfigError>(c >= 0, "custom.type_counts must be nonnegative");
  require<ConfigError>(selection.force_first_subset >= -1, "selection.force_first_subset must be -1 or a subset");
}

ScenarioConfig default_config(Scenario s) {
  ScenarioConfig cfg;
  cfg.scenario = s;
  if (s == Scenario::geometric500) {
    cfg.steps = 100;
    cfg.selection.q = 0;
    cfg.attack.q = 0;
    cfg.attack.family = AttackFamily::stealthy;
    cfg.cases = {RunCase::no_attack, RunCase::dads, RunCase::no_detection};
    cfg.ads_baseline = false;
    cfg.write_trajectories = false;
    cfg.write_attacks = false;
  }
  return cfg;
}

namespace {

// Walks a mapping node, records which keys were read and rejects the rest.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ && !node_.IsMap()) throw ConfigError("'" + path_ + "' must be a mapping");
  }
  // Throws ConfigError for keys no read() asked about.
  void finish() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError("unknown key '" + qualified(key) + "'");
    }
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!node_ || !node_[key]) return;
    try {
      out = node_[key].template as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError("bad value for '" + qualified(key) + "'");
    }
  }

  template <typename E, typename Parse>
  void read_enum(const std::string& key, E& out, Parse parse) {
    std::string text;
    read(key, text);
    if (!text.empty()) out = parse(text);
  }

  YAML::Node child(const std::string& key) {
    seen_.insert(key);
    return node_ ? node_[key] : YAML::Node();
  }
  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_config(const YAML::Node& root, ScenarioConfig& cfg) {
  Section top(root, "");
  top.read("steps", cfg.steps);
  top.read("seed", cfg.seed);
  top.child("scenario");
  {
    Section s(top.child("partition"), "partition");
    s.read_enum("strategy", cfg.partition, parse_partition_strategy);
    s.read("subsets", cfg.subsets);
    s.finish();
  }
  {
    Section s(top.child("selection"), "selection");
    s.read("q", cfg.selection.q);
    s.read_enum("stage1", cfg.selection.stage1, parse_stage1_rule);
    s.read_enum("method", cfg.selection.method, parse_gain_update_method);
    s.read_enum("objective", cfg.selection.kind, parse_objective_kind);
    s.read("persist_weights", cfg.selection.persist_weights);
    s.read("force_first_subset", cfg.selection.force_first_subset);
    s.finish();
  }
  {
    Section s(top.child("attack"), "attack");
    s.read("q", cfg.attack.q);
    s.read_enum("family", cfg.attack.family, parse_attack_family);
    s.read("dims", cfg.attack.attacked_dims);
    s.read("redraw_each_step", cfg.attack.redraw_each_step);
    s.read("noise_bound", cfg.attack.noise_bound);
    s.finish();
  }
  {
    Section s(top.child("estimator"), "estimator");
    s.read("consensus_weight", cfg.consensus_weight);
    s.read("exclude_suspects", cfg.exclude_suspects);
    s.finish();
  }
  {
    Section s(top.child("geometric"), "geometric");
    s.read("nodes", cfg.geometric.nodes);
    s.read("area", cfg.geometric.area);
    s.read("radius", cfg.geometric.radius);
    s.read("retry_limit", cfg.geometric.retry_limit);
    s.finish();
  }
  {
    Section s(top.child("custom"), "custom");
    s.read("type_counts", cfg.type_counts);
    s.finish();
  }
  {
    Section s(top.child("experiment"), "experiment");
    std::vector<std::string> cases;
    s.read("cases", cases);
    if (!cases.empty()) {
      cfg.cases.clear();
      for (const auto& c : cases) cfg.cases.push_back(parse_run_case(c));
    }
    s.read("ads_baseline", cfg.ads_baseline);
    s.read("paired_reference", cfg.paired_reference);
    s.read("threads", cfg.threads);
    s.finish();
  }
  {
    Section s(top.child("output"), "output");
    s.read("dir", cfg.out_dir);
    s.read("trajectories", cfg.write_trajectories);
    s.read("attacks", cfg.write_attacks);
    s.read("selection", cfg.write_selection);
    s.read("plots", cfg.write_plots);
    s.finish();
  }
  top.finish();
}

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (root.IsNull()) return default_config();
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  Scenario scenario = Scenario::star100;
  if (root["scenario"]) scenario = parse_scenario(root["scenario"].as<std::string>());
  ScenarioConfig cfg = default_config(scenario);
  read_config(root, cfg);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "scenario" << YAML::Value << std::string(to_string(cfg.scenario));
  out << YAML::Key << "steps" << YAML::Value << cfg.steps;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;

  out << YAML::Key << "partition" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "strategy" << YAML::Value << std::string(to_string(cfg.partition));
  out << YAML::Key << "subsets" << YAML::Value << cfg.subsets;
  out << YAML::EndMap;

  out << YAML::Key << "selection" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "q" << YAML::Value << cfg.selection.q;
  out << YAML::Comment("0 picks floor(|N_i|/2)");
  out << YAML::Key << "stage1" << YAML::Value << std::string(to_string(cfg.selection.stage1));
  out << YAML::Key << "method" << YAML::Value << std::string(to_string(cfg.selection.method));
  out << YAML::Key << "objective" << YAML::Value << std::string(to_string(cfg.selection.kind));
  out << YAML::Key << "persist_weights" << YAML::Value << cfg.selection.persist_weights;
  out << YAML::Key << "force_first_subset" << YAML::Value << cfg.selection.force_first_subset;
  out << YAML::EndMap;

  out << YAML::Key << "attack" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "q" << YAML::Value << cfg.attack.q;
  out << YAML::Key << "family" << YAML::Value << std::string(to_string(cfg.attack.family));
  out << YAML::Key << "dims" << YAML::Value << YAML::Flow << std::vector<long>(cfg.attack.attacked_dims.begin(),
                                                                                cfg.attack.attacked_dims.end());
  out << YAML::Key << "redraw_each_step" << YAML::Value << cfg.attack.redraw_each_step;
  out << YAML::Key << "noise_bound" << YAML::Value << format_number(cfg.attack.noise_bound);
  out << YAML::EndMap;

  out << YAML::Key << "estimator" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "consensus_weight" << YAML::Value << format_number(cfg.consensus_weight);
  out << YAML::Comment("0 picks 0.5 / max in-degree");
  out << YAML::Key << "exclude_suspects" << YAML::Value << cfg.exclude_suspects;
  out << YAML::EndMap;

  out << YAML::Key << "geometric" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "nodes" << YAML::Value << cfg.geometric.nodes;
  out << YAML::Key << "area" << YAML::Value << format_number(cfg.geometric.area);
  out << YAML::Key << "radius" << YAML::Value << format_number(cfg.geometric.radius);
  out << YAML::Key << "retry_limit" << YAML::Value << cfg.geometric.retry_limit;
  out << YAML::EndMap;

  out << YAML::Key << "custom" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "type_counts" << YAML::Value << YAML::Flow << cfg.type_counts;
  out << YAML::EndMap;

  out << YAML::Key << "experiment" << YAML::Value << YAML::BeginMap;
  std::vector<std::string> cases;
  for (RunCase c : cfg.cases) cases.emplace_back(to_string(c));
  out << YAML::Key << "cases" << YAML::Value << YAML::Flow << cases;
  out << YAML::Key << "ads_baseline" << YAML::Value << cfg.ads_baseline;
  out << YAML::Key << "paired_reference" << YAML::Value << cfg.paired_reference;
  out << YAML::Key << "threads" << YAML::Value << cfg.threads;
  out << YAML::EndMap;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dir" << YAML::Value << cfg.out_dir;
  out << YAML::Key << "trajectories" << YAML::Value << cfg.write_trajectories;
  out << YAML::Key << "attacks" << YAML::Value << cfg.write_attacks;
  out << YAML::Key << "selection" << YAML::Value << cfg.write_selection;
  out << YAML::Key << "plots" << YAML::Value << cfg.write_plots;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace dads
