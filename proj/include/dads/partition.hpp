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

#ifndef DADS_PARTITION_HPP
#define DADS_PARTITION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dads/errors.hpp"
#include "dads/model.hpp"
#include "dads/rng.hpp"
#include "dads/types.hpp"

namespace dads {

enum class PartitionStrategy { grassmann, grassmann_improved, min_mutual, random, balanced_cardinality };

std::string_view to_string(PartitionStrategy s);
PartitionStrategy parse_partition_strategy(std::string_view name);

struct PartitionResult {
  PartitionStrategy strategy = PartitionStrategy::grassmann;
  std::vector<IdList> subsets;      // each sorted ascending
  std::size_t distance_evals = 0;   // Grassmann distances computed

  std::size_t size() const { return subsets.size(); }
  // Index of the subset holding `id`, or -1.
  int subset_of(SensorId id) const;
  IdList members() const;
};

/// Inter-subset interaction and intra-subset correlation of a partition.
struct InfluenceReport {
  Eigen::MatrixXi inter;  // diagonal left at zero (undefined)
  Vector intra;
};

/// Number of state dimensions both sensors observe.
int mutual_influence(const Indicator& a, const Indicator& b);

/// Principal angle between the lines spanned by two indicator vectors.
template <typename DA, typename DB>
typename DA::Scalar grassmann_angle(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename DA::Scalar;
  require(a.size() == b.size(), "grassmann_distance: dimension mismatch");
  const S na2 = a.squaredNorm();
  const S nb2 = b.squaredNorm();
  if (na2 == 0 || nb2 == 0) throw UndefinedSubspace("grassmann_distance: zero vector spans no subspace");
  // One square root of the product keeps identical integer vectors at cosine 1 exactly.
  S c = a.dot(b) / std::sqrt(na2 * nb2);
  c = std::clamp(c, S(0), S(1));
  return std::acos(c);
}

inline double grassmann_distance(const Indicator& a, const Indicator& b) {
  return grassmann_angle(a.cast<double>(), b.cast<double>());
}

/// Subset sizes for `count` items split `m` ways, larger subsets first.
std::vector<std::size_t> balanced_cardinality(std::size_t count, std::size_t m);

PartitionResult partition_grassmann(std::span<const SensorNode> sensors);
PartitionResult partition_grassmann_improved(std::span<const SensorNode> sensors);
PartitionResult partition_min_mutual(std::span<const SensorNode> sensors);
PartitionResult partition_random(const IdList& ids, std::size_t m, RngStream& rng);
/// Contiguous chunks in ascending id order with balanced sizes.
PartitionResult partition_balanced(const IdList& ids, std::size_t m);

/// A single subset holding every id (the centralized case).
PartitionResult partition_single(const IdList& ids);

InfluenceReport influence_report(const PartitionResult& partition, std::span<const SensorNode> sensors);

/// Disjoint cover of exactly `ids`.
bool is_set_partition(const PartitionResult& partition, const IdList& ids);

}  // namespace dads

#endif  // DADS_PARTITION_HPP
