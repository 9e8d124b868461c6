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

#ifndef DADS_SCENARIO_HPP
#define DADS_SCENARIO_HPP

#include <array>
#include <vector>

#include "dads/config.hpp"
#include "dads/model.hpp"
#include "dads/partition.hpp"
#include "dads/rng.hpp"

namespace dads {

/// Measurement row for neighbor type t in 1..4 (a unit row vector), or the
/// central sensor's row for t = 0.
Matrix type_measurement(int t, Index n = 4);

struct Scenario1 {
  SystemModel model;
  NetworkGraph graph;
  SensorId receiver = 0;
  IdList neighbors;
  PartitionResult partition;  // of the receiver's neighbors, per cfg.partition
};

/// Central sensor 0 fed by neighbors grouped by type in id order. The type
/// counts come from cfg.type_counts for the custom scenario and are
/// 25 each otherwise.
Scenario1 build_star100(const ScenarioConfig& cfg);

struct Scenario2 {
  SystemModel model;
  NetworkGraph graph;
  std::size_t resamples = 0;  // node positions redrawn to satisfy the type balance
};

/// Random geometric network with every in-neighborhood rebalanced to equal
/// per-type counts, nearest first.
Scenario2 build_geometric500(const ScenarioConfig& cfg, RngStream& rng);

/// Partition of one receiver's in-neighbors under cfg.partition.
PartitionResult partition_neighbors(const NetworkGraph& graph, SensorId receiver, const ScenarioConfig& cfg);

}  // namespace dads

#endif  // DADS_SCENARIO_HPP
