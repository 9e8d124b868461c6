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

#ifndef DADS_METRICS_HPP
#define DADS_METRICS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dads/partition.hpp"
#include "dads/rng.hpp"
#include "dads/selection.hpp"
#include "dads/types.hpp"

namespace dads {

/// Time-averaged f(selected)/f(optimal) over steps with a positive optimum.
struct RateSummary {
  double rate = 0;
  std::size_t steps = 0;     // steps that entered the average
  std::size_t excluded = 0;  // steps with a zero optimum
  bool exceeded_one = false; // a greedy-surrogate optimum was beaten
};

/// Optimization rate of per-step selections restricted to `universe` (all
/// ids when empty). The optimum at step k has the same cardinality as the
/// selection restricted to the universe.
RateSummary optimization_rate(std::span<const IdList> selected, std::span<const ErrorMatrix> errors,
                              ObjectiveKind kind, std::span<const SensorId> universe = {});

struct OptRateReport {
  std::string algorithm;
  std::string stage1;
  std::string family;
  std::vector<double> per_subset;
  double subset_average = 0;  // pooled over (step, subset) pairs
  double total = 0;
  std::size_t excluded = 0;
  bool exceeded_one = false;
};

/// Streaming form of optimization_rate for one receiver and partition.
class OptRateTracker {
 public:
  OptRateTracker(ObjectiveKind kind, std::size_t subsets);
  void add(const ErrorMatrix& errors, const PartitionResult& partition, const IdList& suspects);
  OptRateReport report() const;

 private:
  void accumulate(double num, double den, double& sum, std::size_t& count);

  ObjectiveKind kind_;
  std::vector<double> subset_sum_;
  std::vector<std::size_t> subset_count_;
  double total_sum_ = 0;
  std::size_t total_count_ = 0;
  std::size_t excluded_ = 0;
  bool exceeded_one_ = false;
};

/// Per-sensor estimation error ||x_hat - x|| / sqrt(n).
double estimation_error(const Vector& estimate, const Vector& truth);

enum class RmseAggregate { mean, max };

/// Per-step aggregate of per-sensor errors; errors[k][i] is sensor i at step k.
std::vector<double> rmse_curve(const std::vector<std::vector<double>>& errors, RmseAggregate how);

struct RmseCurves {
  std::vector<double> no_attack;     // mean over sensors
  std::vector<double> dads;          // max over sensors
  std::vector<double> no_detection;  // max over sensors
};

RmseCurves rmse_curves(const std::vector<std::vector<double>>& no_attack,
                       const std::vector<std::vector<double>>& dads,
                       const std::vector<std::vector<double>>& no_detection);

/// Trailing-window root mean square: sqrt(mean(v[t]^2)) over the last
/// `window` entries up to and including k.
std::vector<double> windowed_rmse(std::span<const double> values, std::size_t window = 10);

double mean(std::span<const double> values);

enum class OccupancyMode { analytic, montecarlo };

struct Occupancy {
  double mean = 0;      // expected attacked subsets
  double fraction = 0;  // mean / m
};

inline constexpr std::size_t kOccupancyDraws = 10000;

/// Expected number of balanced subsets hit when d of N items are attacked.
Occupancy occupancy(std::size_t N, std::size_t m, std::size_t d, OccupancyMode mode, RngStream* rng = nullptr,
                    std::size_t draws = kOccupancyDraws);

}  // namespace dads

#endif  // DADS_METRICS_HPP
