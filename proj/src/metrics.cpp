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

#include "dads/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dads/errors.hpp"

namespace dads {

namespace {

IdList restrict_to(const IdList& ids, std::span<const SensorId> universe) {
  if (universe.empty()) return ids;
  IdList out;
  for (SensorId id : ids) {
    if (std::find(universe.begin(), universe.end(), id) != universe.end()) out.push_back(id);
  }
  return out;
}

}  // namespace

RateSummary optimization_rate(std::span<const IdList> selected, std::span<const ErrorMatrix> errors,
                              ObjectiveKind kind, std::span<const SensorId> universe) {
  require(!selected.empty(), "optimization_rate: at least one step required");
  require(selected.size() == errors.size(), "optimization_rate: selections and errors must align");
  RateSummary out;
  double sum = 0;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const IdList chosen = restrict_to(selected[k], universe);
    const OptimalSet best = optimal_set(kind, errors[k], chosen.size(), universe);
    if (best.value <= 0) {
      ++out.excluded;
      continue;
    }
    const double r = objective(kind, errors[k], chosen) / best.value;
    if (r > 1.0) out.exceeded_one = true;
    sum += r;
    ++out.steps;
  }
  out.rate = out.steps ? sum / static_cast<double>(out.steps) : 0.0;
  return out;
}

OptRateTracker::OptRateTracker(ObjectiveKind kind, std::size_t subsets)
    : kind_(kind), subset_sum_(subsets, 0.0), subset_count_(subsets, 0) {}

void OptRateTracker::accumulate(double num, double den, double& sum, std::size_t& count) {
  if (den <= 0) {
    ++excluded_;
    return;
  }
  const double r = num / den;
  // Exact optima cannot be beaten; allow for rounding in the comparison.
  if (r > 1.0 + 1e-12) exceeded_one_ = true;
  sum += r;
  ++count;
}

void OptRateTracker::add(const ErrorMatrix& errors, const PartitionResult& partition, const IdList& suspects) {
  require(partition.size() == subset_sum_.size(), "OptRateTracker: subset count changed");
  for (std::size_t g = 0; g < partition.size(); ++g) {
    const IdList& universe = partition.subsets[g];
    const IdList chosen = restrict_to(suspects, universe);
    const OptimalSet best = optimal_set(kind_, errors, chosen.size(), universe);
    accumulate(objective(kind_, errors, chosen), best.value, subset_sum_[g], subset_count_[g]);
  }
  const OptimalSet best = optimal_set(kind_, errors, suspects.size());
  accumulate(objective(kind_, errors, suspects), best.value, total_sum_, total_count_);
}

OptRateReport OptRateTracker::report() const {
  OptRateReport r;
  double pooled = 0;
  std::size_t n = 0;
  for (std::size_t g = 0; g < subset_sum_.size(); ++g) {
    r.per_subset.push_back(subset_count_[g] ? subset_sum_[g] / static_cast<double>(subset_count_[g]) : 0.0);
    pooled += subset_sum_[g];
    n += subset_count_[g];
  }
  r.subset_average = n ? pooled / static_cast<double>(n) : 0.0;
  r.total = total_count_ ? total_sum_ / static_cast<double>(total_count_) : 0.0;
  r.excluded = excluded_;
  r.exceeded_one = exceeded_one_;
  return r;
}

double estimation_error(const Vector& estimate, const Vector& truth) {
  require(estimate.size() == truth.size() && truth.size() > 0, "estimation_error: dimension mismatch");
  return (estimate - truth).norm() / std::sqrt(static_cast<double>(truth.size()));
}

std::vector<double> rmse_curve(const std::vector<std::vector<double>>& errors, RmseAggregate how) {
  std::vector<double> out;
  out.reserve(errors.size());
  for (const auto& step : errors) {
    require(!step.empty(), "rmse_curve: a step has no sensors");
    if (how == RmseAggregate::mean) {
      out.push_back(mean(step));
    } else {
      out.push_back(*std::max_element(step.begin(), step.end()));
    }
  }
  return out;
}

RmseCurves rmse_curves(const std::vector<std::vector<double>>& no_attack,
                       const std::vector<std::vector<double>>& dads,
                       const std::vector<std::vector<double>>& no_detection) {
  require(no_attack.size() == dads.size() && dads.size() == no_detection.size(),
          "rmse_curves: time axes differ");
  return {rmse_curve(no_attack, RmseAggregate::mean), rmse_curve(dads, RmseAggregate::max),
          rmse_curve(no_detection, RmseAggregate::max)};
}

std::vector<double> windowed_rmse(std::span<const double> values, std::size_t window) {
  require(window >= 1, "windowed_rmse: window must be positive");
  std::vector<double> out(values.size());
  double acc = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc += values[k] * values[k];
    if (k >= window) acc -= values[k - window] * values[k - window];
    const std::size_t len = std::min(window, k + 1);
    out[k] = std::sqrt(std::max(acc, 0.0) / static_cast<double>(len));
  }
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

Occupancy occupancy(std::size_t N, std::size_t m, std::size_t d, OccupancyMode mode, RngStream* rng,
                    std::size_t draws) {
  require(d <= N, "occupancy: more attacked items than items");
  const auto sizes = balanced_cardinality(N, m);
  Occupancy out;
  if (mode == OccupancyMode::analytic) {
    for (std::size_t s : sizes) {
      // Probability that none of the d draws lands in a subset of size s.
      double miss = d > N - s ? 0.0 : 1.0;
      for (std::size_t i = 0; i < d && miss > 0; ++i) {
        miss *= static_cast<double>(N - s - i) / static_cast<double>(N - i);
      }
      out.mean += 1.0 - miss;
    }
  } else {
    require(rng != nullptr, "occupancy: Monte Carlo mode needs a random stream");
    require(draws > 0, "occupancy: at least one draw required");
    std::vector<std::size_t> owner;
    for (std::size_t g = 0; g < sizes.size(); ++g) owner.insert(owner.end(), sizes[g], g);
    std::vector<std::size_t> items(N);
    std::vector<char> hit(m);
    std::size_t total = 0;
    for (std::size_t t = 0; t < draws; ++t) {
      std::iota(items.begin(), items.end(), 0);
      std::fill(hit.begin(), hit.end(), 0);
      for (std::size_t i = 0; i < d; ++i) {
        std::swap(items[i], items[i + rng->index(N - i)]);
        hit[owner[items[i]]] = 1;
      }
      total += static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    }
    out.mean = static_cast<double>(total) / static_cast<double>(draws);
  }
  out.fraction = out.mean / static_cast<double>(m);
  return out;
}

}  // namespace dads
