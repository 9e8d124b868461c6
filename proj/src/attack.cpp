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

#include "dads/attack.hpp"

#include <algorithm>
#include <string>

#include "dads/errors.hpp"

namespace dads {

std::string_view to_string(AttackFamily f) {
  return f == AttackFamily::stealthy ? "stealthy" : "unstealthy";
}

AttackFamily parse_attack_family(std::string_view name) {
  if (name == "stealthy") return AttackFamily::stealthy;
  if (name == "unstealthy") return AttackFamily::unstealthy;
  throw ConfigError("unknown attack family '" + std::string(name) + "'");
}

void AttackConfig::validate(std::size_t neighborhood_size) const {
  if (q < 0 || static_cast<std::size_t>(q) > neighborhood_size / 2) {
    throw ConstraintError("attack q=" + std::to_string(q) + " exceeds half of a neighborhood of " +
                          std::to_string(neighborhood_size));
  }
  require<ConstraintError>(noise_bound >= 0, "attack noise bound must be nonnegative");
}

std::pair<Scalar, Scalar> AttackConfig::amplitude_band() const {
  if (family == AttackFamily::stealthy) return {1.0 * noise_bound, 2.0 * noise_bound};
  return {5.0 * noise_bound, 10.0 * noise_bound};
}

void AttackTrace::record(IdList compromised, std::vector<InjectedSignal> signals) {
  std::size_t delta = 0;
  if (!compromised_.empty()) {
    IdList prev = compromised_.back();
    IdList cur = compromised;
    std::sort(prev.begin(), prev.end());
    std::sort(cur.begin(), cur.end());
    IdList sym;
    std::set_symmetric_difference(prev.begin(), prev.end(), cur.begin(), cur.end(),
                                  std::back_inserter(sym));
    delta = sym.size();
  }
  if (power_sum_.size() < signals.size()) power_sum_.resize(signals.size(), 0.0);
  for (std::size_t l = 0; l < signals.size(); ++l) power_sum_[l] += signals[l].z.squaredNorm();
  deltas_.push_back(delta);
  delta_total_ += delta;
  compromised_.push_back(std::move(compromised));
  signals_.push_back(std::move(signals));
}

std::vector<double> AttackTrace::slot_power() const {
  std::vector<double> phi = power_sum_;
  if (steps() == 0) return phi;
  for (double& p : phi) p /= static_cast<double>(steps());
  return phi;
}

IdList draw_compromised(const IdList& neighbors, const AttackConfig& cfg, RngStream& rng) {
  cfg.validate(neighbors.size());
  IdList pool = neighbors;
  std::sort(pool.begin(), pool.end());
  IdList out;
  out.reserve(static_cast<std::size_t>(cfg.q));
  // Partial Fisher-Yates: the first q positions form the draw.
  for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.q); ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

Attacker::Attacker(IdList neighbors, AttackConfig cfg)
    : neighbors_(std::move(neighbors)), cfg_(std::move(cfg)) {
  cfg_.validate(neighbors_.size());
}

const IdList& Attacker::next(RngStream& rng) {
  if (!started_ || cfg_.redraw_each_step) {
    current_ = draw_compromised(neighbors_, cfg_, rng);
    started_ = true;
  }
  return current_;
}

std::pair<Vector, Vector> inject(const Vector& estimate, const AttackConfig& cfg, RngStream& rng) {
  Vector z = Vector::Zero(estimate.size());
  const auto [lo, hi] = cfg.amplitude_band();
  for (Index d : cfg.attacked_dims) {
    require(d >= 0 && d < estimate.size(), "inject: attacked dimension out of range");
    const Scalar amplitude = rng.uniform(lo, hi);
    z(d) = rng.coin() ? amplitude : -amplitude;
  }
  return {estimate + z, z};
}

BalanceStats balance_stats(const AttackTrace& trace, const PartitionResult& partition) {
  const std::size_t m = partition.size();
  BalanceStats out;
  out.mean_attacked.assign(m, 0.0);
  out.intensity_ratio.assign(m, 0.0);
  std::vector<double> power(m, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < trace.steps(); ++k) {
    for (SensorId j : trace.compromised(k)) {
      const int g = partition.subset_of(j);
      require(g >= 0, "balance_stats: compromised sensor " + std::to_string(j) + " is not partitioned");
      out.mean_attacked[static_cast<std::size_t>(g)] += 1.0;
    }
    for (const InjectedSignal& s : trace.signals(k)) {
      const int g = partition.subset_of(s.sender);
      require(g >= 0, "balance_stats: attacked sender " + std::to_string(s.sender) + " is not partitioned");
      const double e = s.z.squaredNorm();
      power[static_cast<std::size_t>(g)] += e;
      total += e;
    }
  }
  if (trace.steps() > 0) {
    for (double& v : out.mean_attacked) v /= static_cast<double>(trace.steps());
  }
  if (total > 0) {
    for (std::size_t g = 0; g < m; ++g) out.intensity_ratio[g] = power[g] / total;
  } else {
    out.ratio_defined = false;
  }
  return out;
}

}  // namespace dads
