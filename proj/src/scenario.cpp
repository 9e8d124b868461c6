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

#include "dads/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dads/errors.hpp"

namespace dads {

namespace {

constexpr Scalar kMeasVariance = 0.5;
constexpr Scalar kMeasBound = 0.05;

SensorNode typed_sensor(SensorId id, int type, const SystemModel& model) {
  SensorNode s = make_sensor(id, model, type_measurement(type, model.state_dim()),
                             Matrix::Constant(1, 1, kMeasVariance), kMeasBound);
  s.type = type;
  s.estimate = model.initial_state;
  return s;
}

}  // namespace

Matrix type_measurement(int t, Index n) {
  require(t >= 0 && t <= 4 && n >= 4, "type_measurement: type must be in 0..4");
  Matrix c = Matrix::Zero(1, n);
  c(0, t == 0 ? 0 : t - 1) = 1.0;
  return c;
}

Scenario1 build_star100(const ScenarioConfig& cfg) {
  Scenario1 out;
  out.model = agv_model();
  const std::vector<int> counts =
      cfg.scenario == Scenario::custom ? cfg.type_counts : std::vector<int>{25, 25, 25, 25};
  std::vector<SensorNode> nodes;
  nodes.push_back(typed_sensor(0, 0, out.model));
  SensorId next = 1;
  for (int t = 1; t <= 4; ++t) {
    for (int c = 0; c < counts[static_cast<std::size_t>(t - 1)]; ++c) {
      out.neighbors.push_back(next);
      nodes.push_back(typed_sensor(next++, t, out.model));
    }
  }
  nodes.front().neighbors_in = out.neighbors;
  out.graph = NetworkGraph(out.model, std::move(nodes));
  out.partition = partition_neighbors(out.graph, out.receiver, cfg);
  return out;
}

Scenario2 build_geometric500(const ScenarioConfig& cfg, RngStream& rng) {
  Scenario2 out;
  out.model = agv_model();
  const auto& g = cfg.geometric;
  const std::size_t n = static_cast<std::size_t>(g.nodes);
  std::vector<Eigen::Vector2d> pos(n);
  std::vector<int> type(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = {rng.uniform(0.0, g.area), rng.uniform(0.0, g.area)};
    type[i] = 1 + static_cast<int>(rng.index(4));
  }
  const double r2 = g.radius * g.radius;

  // In-neighbors of i grouped by type, each group sorted nearest first.
  auto grouped = [&](std::size_t i) {
    std::array<std::vector<std::size_t>, 4> by_type;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && (pos[i] - pos[j]).squaredNorm() <= r2) by_type[static_cast<std::size_t>(type[j] - 1)].push_back(j);
    }
    for (auto& v : by_type) {
      std::stable_sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
        return (pos[i] - pos[a]).squaredNorm() < (pos[i] - pos[b]).squaredNorm();
      });
    }
    return by_type;
  };
  auto balance = [](const std::array<std::vector<std::size_t>, 4>& by_type) {
    std::size_t t = by_type[0].size();
    for (const auto& v : by_type) t = std::min(t, v.size());
    return t;
  };

  // Redraw the position of the first node that cannot see every type until
  // none remain; moving one node can starve another, hence the outer loop.
  for (;;) {
    std::size_t failing = n;
    for (std::size_t i = 0; i < n && failing == n; ++i) {
      if (balance(grouped(i)) == 0) failing = i;
    }
    if (failing == n) break;
    if (out.resamples >= static_cast<std::size_t>(g.retry_limit)) {
      throw ConstructionError("build_geometric500: node " + std::to_string(failing) +
                              " cannot reach all four sensor types within the retry limit");
    }
    pos[failing] = {rng.uniform(0.0, g.area), rng.uniform(0.0, g.area)};
    ++out.resamples;
  }

  std::vector<SensorNode> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SensorNode s = typed_sensor(static_cast<SensorId>(i), type[i], out.model);
    const auto by_type = grouped(i);
    const std::size_t t = balance(by_type);
    for (const auto& v : by_type) {
      for (std::size_t c = 0; c < t; ++c) s.neighbors_in.push_back(static_cast<SensorId>(v[c]));
    }
    std::sort(s.neighbors_in.begin(), s.neighbors_in.end());
    nodes.push_back(std::move(s));
  }
  out.graph = NetworkGraph(out.model, std::move(nodes), pos);
  return out;
}

PartitionResult partition_neighbors(const NetworkGraph& graph, SensorId receiver, const ScenarioConfig& cfg) {
  const IdList& ids = graph.node(receiver).neighbors_in;
  const std::vector<SensorNode> sensors = graph.gather(ids);
  switch (cfg.partition) {
    case PartitionStrategy::grassmann: return partition_grassmann(sensors);
    case PartitionStrategy::grassmann_improved: return partition_grassmann_improved(sensors);
    case PartitionStrategy::min_mutual: return partition_min_mutual(sensors);
    case PartitionStrategy::random: {
      RngStream rng = derive_stream(cfg.seed, "partition.random", static_cast<std::uint64_t>(receiver));
      return partition_random(ids, std::min<std::size_t>(static_cast<std::size_t>(cfg.subsets), ids.size()), rng);
    }
    case PartitionStrategy::balanced_cardinality:
      return partition_balanced(ids, std::min<std::size_t>(static_cast<std::size_t>(cfg.subsets), ids.size()));
  }
  throw ContractViolation("partition_neighbors: unknown strategy");
}

}  // namespace dads
