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

#ifndef DADS_EXPERIMENT_HPP
#define DADS_EXPERIMENT_HPP

#include <exception>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "dads/attack.hpp"
#include "dads/config.hpp"
#include "dads/metrics.hpp"
#include "dads/model.hpp"
#include "dads/partition.hpp"
#include "dads/selection.hpp"

namespace dads {

/// A scenario's plant, graph and per-receiver partitions.
struct Network {
  SystemModel model;
  NetworkGraph graph;
  SensorId primary = 0;  // receiver whose selection internals are recorded
  std::map<SensorId, PartitionResult> partitions;
  std::size_t resamples = 0;
};

Network build_network(const ScenarioConfig& cfg);

struct CaseResult {
  RunCase which = RunCase::dads;
  std::vector<std::vector<double>> errors;  // errors[k-1][node position], k = 1..T
  std::vector<double> curve;                // mean over sensors for no_attack, max otherwise
};

struct AttackRow {
  int k;
  SensorId receiver;
  SensorId sender;
  Index dim;
  double z;
};

struct SelectionRow {
  int k;
  int l;  // round in which the candidate was selected, 0 if never
  int subset;
  SensorId candidate;
  double weight;  // w / max w
  double p;
  bool selected;
};

/// Selection internals of the primary receiver in the main case.
struct PrimaryStats {
  SensorId receiver = 0;
  PartitionResult partition;
  bool tracked = false;  // a detection case ran
  OptRateReport dads;
  bool has_ads = false;
  OptRateReport ads;
  std::size_t dads_updates = 0;
  std::size_t ads_updates = 0;
  BalanceStats balance;
  AttackTrace trace;
  std::vector<std::vector<double>> ratio_error;  // [k-1][subset], paired runs only
};

struct ExperimentResult {
  ScenarioConfig config;
  Network network;
  std::vector<CaseResult> cases;
  RunCase main_case = RunCase::dads;
  PrimaryStats primary;
  std::vector<Vector> truth;      // x(k), k = 0..T
  std::vector<Matrix> estimates;  // columns follow graph node order
  std::vector<AttackRow> attacks;
  std::vector<SelectionRow> selection;
};

/// Simulates every configured case on shared random streams.
ExperimentResult run_experiment(const ScenarioConfig& cfg);

/// Writes the CSV bundle and, when enabled, the plots rendered from it.
void write_outputs(const ExperimentResult& result, const std::string& dir);

/// Renders plots and a text summary from the CSVs found in `dir`.
/// Returns the summary text.
std::string regenerate_report(const std::string& dir);

struct OccupancyRow {
  std::size_t m;
  std::size_t d;
  Occupancy value;
  OccupancyMode mode;
};

inline const std::vector<std::size_t> kOccupancySubsets = {2, 4, 5, 10, 20, 30, 40, 50};

/// Both modes over the subset grid and d = 1, 6, ..., 96 for N = 100.
std::vector<OccupancyRow> sweep_occupancy(std::uint64_t seed, std::size_t N = 100,
                                          std::size_t draws = kOccupancyDraws);
void write_occupancy(const std::vector<OccupancyRow>& rows, const std::string& dir, bool plots = true);

/// Partitions the primary receiver's neighbors under every strategy and
/// writes partition.csv, influence.csv, correlation.csv and cost.csv.
/// Returns a printable summary.
std::string partition_report(const ScenarioConfig& cfg, const std::string& dir);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The exception of
/// the lowest failing index is rethrown after all workers finish.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
  if (workers <= 1) {
    run(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(run, std::min(n, w * chunk), std::min(n, (w + 1) * chunk));
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dads

#endif  // DADS_EXPERIMENT_HPP
