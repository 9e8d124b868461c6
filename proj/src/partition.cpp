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

#include "dads/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "dads/linalg.hpp"

namespace dads {

std::string_view to_string(PartitionStrategy s) {
  switch (s) {
    case PartitionStrategy::grassmann: return "grassmann";
    case PartitionStrategy::grassmann_improved: return "grassmann_improved";
    case PartitionStrategy::min_mutual: return "min_mutual";
    case PartitionStrategy::random: return "random";
    case PartitionStrategy::balanced_cardinality: return "balanced_cardinality";
  }
  return "?";
}

PartitionStrategy parse_partition_strategy(std::string_view name) {
  for (auto s : {PartitionStrategy::grassmann, PartitionStrategy::grassmann_improved,
                 PartitionStrategy::min_mutual, PartitionStrategy::random,
                 PartitionStrategy::balanced_cardinality}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown partition strategy '" + std::string(name) + "'");
}

int PartitionResult::subset_of(SensorId id) const {
  for (std::size_t g = 0; g < subsets.size(); ++g) {
    if (std::binary_search(subsets[g].begin(), subsets[g].end(), id)) return static_cast<int>(g);
  }
  return -1;
}

IdList PartitionResult::members() const {
  IdList out;
  for (const IdList& s : subsets) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

int mutual_influence(const Indicator& a, const Indicator& b) {
  require(a.size() == b.size(), "mutual_influence: dimension mismatch");
  int count = 0;
  for (Index l = 0; l < a.size(); ++l) count += (a(l) && b(l)) ? 1 : 0;
  return count;
}

std::vector<std::size_t> balanced_cardinality(std::size_t count, std::size_t m) {
  if (m == 0 || m > count) {
    throw InfeasiblePartition("cannot split " + std::to_string(count) + " items into " +
                              std::to_string(m) + " nonempty subsets");
  }
  std::vector<std::size_t> sizes(m, count / m);
  for (std::size_t g = 0; g < count % m; ++g) ++sizes[g];
  return sizes;
}

namespace {

std::vector<const SensorNode*> sorted_by_id(std::span<const SensorNode> sensors) {
  std::vector<const SensorNode*> order;
  order.reserve(sensors.size());
  for (const SensorNode& s : sensors) {
    require(s.indicator.size() > 0 && popcount(s.indicator) > 0,
            "partition: sensor " + std::to_string(s.id) + " has an empty indicator");
    order.push_back(&s);
  }
  std::sort(order.begin(), order.end(),
            [](const SensorNode* a, const SensorNode* b) { return a->id < b->id; });
  return order;
}

// Representative scan over a group: each sensor joins the first subset whose
// first member is at distance zero, else opens a new subset. The full pairwise
// distance table of the group is evaluated up front.
void representative_scan(const std::vector<const SensorNode*>& group, PartitionResult& out) {
  const std::size_t n = group.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      dist[a * n + b] = dist[b * n + a] = grassmann_distance(group[a]->indicator, group[b]->indicator);
      ++out.distance_evals;
    }
  }
  std::vector<std::size_t> reps;  // local index of each new subset's first member
  std::vector<IdList> local;
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t g = 0; g < reps.size(); ++g) {
      if (dist[a * n + reps[g]] == 0.0) {
        local[g].push_back(group[a]->id);
        found = true;
        break;
      }
    }
    if (!found) {
      reps.push_back(a);
      local.push_back({group[a]->id});
    }
  }
  // Every pair inside a subset must be at distance zero, not only the pair
  // formed with the representative.
  std::unordered_map<SensorId, std::size_t> pos;
  for (std::size_t a = 0; a < n; ++a) pos[group[a]->id] = a;
  for (const IdList& s : local) {
    for (std::size_t x = 0; x < s.size(); ++x) {
      for (std::size_t y = x + 1; y < s.size(); ++y) {
        require(dist[pos[s[x]] * n + pos[s[y]]] == 0.0,
                "partition: non-transitive zero distance inside a subset");
      }
    }
  }
  for (IdList& s : local) out.subsets.push_back(std::move(s));
}

}  // namespace

PartitionResult partition_grassmann(std::span<const SensorNode> sensors) {
  PartitionResult out;
  out.strategy = PartitionStrategy::grassmann;
  representative_scan(sorted_by_id(sensors), out);
  return out;
}

PartitionResult partition_grassmann_improved(std::span<const SensorNode> sensors) {
  PartitionResult out;
  out.strategy = PartitionStrategy::grassmann_improved;
  std::map<Index, std::vector<const SensorNode*>> rank_groups;
  for (const SensorNode* s : sorted_by_id(sensors)) rank_groups[s->obs_rank()].push_back(s);
  for (const auto& [rank, group] : rank_groups) representative_scan(group, out);
  // Present subsets in order of their smallest member.
  std::sort(out.subsets.begin(), out.subsets.end(),
            [](const IdList& a, const IdList& b) { return a.front() < b.front(); });
  return out;
}

PartitionResult partition_min_mutual(std::span<const SensorNode> sensors) {
  const auto order = sorted_by_id(sensors);
  const std::size_t n = order.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (mutual_influence(order[a]->indicator, order[b]->indicator) > 0) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  PartitionResult out;
  out.strategy = PartitionStrategy::min_mutual;
  std::map<std::size_t, IdList> components;
  for (std::size_t a = 0; a < n; ++a) components[find(a)].push_back(order[a]->id);
  for (auto& [root, ids] : components) out.subsets.push_back(std::move(ids));
  return out;
}

PartitionResult partition_random(const IdList& ids, std::size_t m, RngStream& rng) {
  const auto sizes = balanced_cardinality(ids.size(), m);
  IdList shuffled = ids;
  std::sort(shuffled.begin(), shuffled.end());
  // Fisher-Yates with the stream's own index draws.
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
  }
  PartitionResult out;
  out.strategy = PartitionStrategy::random;
  std::size_t at = 0;
  for (std::size_t size : sizes) {
    IdList s(shuffled.begin() + static_cast<std::ptrdiff_t>(at),
             shuffled.begin() + static_cast<std::ptrdiff_t>(at + size));
    std::sort(s.begin(), s.end());
    out.subsets.push_back(std::move(s));
    at += size;
  }
  return out;
}

PartitionResult partition_balanced(const IdList& ids, std::size_t m) {
  const auto sizes = balanced_cardinality(ids.size(), m);
  IdList sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  PartitionResult out;
  out.strategy = PartitionStrategy::balanced_cardinality;
  std::size_t at = 0;
  for (std::size_t size : sizes) {
    out.subsets.emplace_back(sorted.begin() + static_cast<std::ptrdiff_t>(at),
                             sorted.begin() + static_cast<std::ptrdiff_t>(at + size));
    at += size;
  }
  return out;
}

PartitionResult partition_single(const IdList& ids) {
  PartitionResult out;
  out.strategy = PartitionStrategy::balanced_cardinality;
  IdList sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  out.subsets.push_back(std::move(sorted));
  return out;
}

InfluenceReport influence_report(const PartitionResult& partition, std::span<const SensorNode> sensors) {
  std::unordered_map<SensorId, const Indicator*> ind;
  for (const SensorNode& s : sensors) ind[s.id] = &s.indicator;
  auto lookup = [&](SensorId id) -> const Indicator& {
    auto it = ind.find(id);
    if (it == ind.end()) throw UnknownId("influence_report: partition member " + std::to_string(id) +
                                         " has no sensor");
    return *it->second;
  };
  const Index m = static_cast<Index>(partition.size());
  InfluenceReport r;
  r.inter = Eigen::MatrixXi::Zero(m, m);
  r.intra = Vector::Zero(m);
  for (Index g = 0; g < m; ++g) {
    const IdList& sg = partition.subsets[static_cast<std::size_t>(g)];
    std::size_t identical = 0;
    for (SensorId a : sg) {
      for (SensorId b : sg) identical += (lookup(a) == lookup(b)) ? 1 : 0;
    }
    r.intra(g) = sg.empty() ? 0.0
                            : static_cast<double>(identical) / static_cast<double>(sg.size() * sg.size());
    for (Index q = g + 1; q < m; ++q) {
      int partial = 0;
      for (SensorId a : sg) {
        for (SensorId b : partition.subsets[static_cast<std::size_t>(q)]) {
          const Indicator& ia = lookup(a);
          const Indicator& ib = lookup(b);
          if (mutual_influence(ia, ib) > 0 && ia != ib) ++partial;
        }
      }
      r.inter(g, q) = r.inter(q, g) = partial;
    }
  }
  return r;
}

bool is_set_partition(const PartitionResult& partition, const IdList& ids) {
  IdList a = partition.members();
  IdList b = ids;
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
  for (const IdList& s : partition.subsets) {
    if (s.empty()) return false;
  }
  return a == b;
}

}  // namespace dads
