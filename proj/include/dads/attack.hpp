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

#ifndef DADS_ATTACK_HPP
#define DADS_ATTACK_HPP

#include <string_view>
#include <utility>
#include <vector>

#include "dads/partition.hpp"
#include "dads/rng.hpp"
#include "dads/types.hpp"

namespace dads {

enum class AttackFamily { stealthy, unstealthy };

std::string_view to_string(AttackFamily f);
AttackFamily parse_attack_family(std::string_view name);

struct AttackConfig {
  int q = 0;                      // compromised links per neighborhood
  AttackFamily family = AttackFamily::unstealthy;
  std::vector<Index> attacked_dims;  // zero-based state coordinates
  bool redraw_each_step = true;
  Scalar noise_bound = 0.05;      // amplitude unit b

  // Throws ConstraintError when q exceeds half the neighborhood.
  void validate(std::size_t neighborhood_size) const;
  // Amplitude band [lo, hi] in absolute units.
  std::pair<Scalar, Scalar> amplitude_band() const;
};

struct InjectedSignal {
  SensorId receiver = 0;
  SensorId sender = 0;
  Vector z;
};

/// Per-step compromised sets and injected signals for one receiver.
class AttackTrace {
 public:
  AttackTrace() = default;
  explicit AttackTrace(SensorId receiver) : receiver_(receiver) {}

  // `compromised` is in slot order: slot l is the l-th compromised sender.
  // `signals` holds one entry per compromised sender in the same order.
  void record(IdList compromised, std::vector<InjectedSignal> signals);

  SensorId receiver() const { return receiver_; }
  std::size_t steps() const { return compromised_.size(); }
  const IdList& compromised(std::size_t k) const { return compromised_[k]; }
  const std::vector<InjectedSignal>& signals(std::size_t k) const { return signals_[k]; }
  std::size_t delta_total() const { return delta_total_; }
  std::size_t delta(std::size_t k) const { return deltas_[k]; }
  // phi_l = (1/T) sum_k ||z_l(k)||^2 per attacker slot.
  std::vector<double> slot_power() const;

 private:
  SensorId receiver_ = 0;
  std::vector<IdList> compromised_;
  std::vector<std::vector<InjectedSignal>> signals_;
  std::vector<std::size_t> deltas_;
  std::vector<double> power_sum_;
  std::size_t delta_total_ = 0;
};

/// Uniform random q-subset of `neighbors`, in draw order.
IdList draw_compromised(const IdList& neighbors, const AttackConfig& cfg, RngStream& rng);

/// Attack process for one receiver; holds the previous set when redraws are off.
class Attacker {
 public:
  Attacker(IdList neighbors, AttackConfig cfg);
  const IdList& next(RngStream& rng);
  const AttackConfig& config() const { return cfg_; }

 private:
  IdList neighbors_;
  AttackConfig cfg_;
  IdList current_;
  bool started_ = false;
};

/// Returns (estimate + z, z); z is zero outside the attacked dimensions.
std::pair<Vector, Vector> inject(const Vector& estimate, const AttackConfig& cfg, RngStream& rng);

struct BalanceStats {
  std::vector<double> mean_attacked;    // per subset, averaged over steps
  std::vector<double> intensity_ratio;  // per subset share of total squared signal
  bool ratio_defined = true;            // false when no signal was injected
};

BalanceStats balance_stats(const AttackTrace& trace, const PartitionResult& partition);

}  // namespace dads

#endif  // DADS_ATTACK_HPP
