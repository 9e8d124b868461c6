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

#ifndef DADS_MODEL_HPP
#define DADS_MODEL_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "dads/rng.hpp"
#include "dads/types.hpp"

namespace dads {

/// Linear time-invariant plant x(k+1) = A x(k) + w(k) with bounded noise.
struct SystemModel {
  Matrix transition;     // A, n x n
  Matrix process_cov;    // Q, symmetric positive definite
  Scalar process_bound;  // infinity-norm clamp on w
  Vector initial_state;  // x(0)

  Index state_dim() const { return transition.rows(); }

  // Throws ContractViolation when the invariants do not hold.
  void validate() const;
};

/// Constant-velocity AGV plant sampled at 50 Hz.
SystemModel agv_model(Scalar process_variance = 0.5, Scalar process_bound = 0.05);

struct SensorNode {
  SensorId id = 0;
  Matrix meas_matrix;   // C_i
  Matrix meas_cov;      // R_i
  Scalar meas_bound = 0;
  Vector estimate;      // current state estimate
  Matrix gain;          // K_i, n x m
  Matrix obs_matrix;    // transposed stacked observability matrix
  Indicator indicator;  // nonzero-row pattern of obs_matrix
  IdList neighbors_in;  // senders whose estimates this node fuses
  int type = -1;        // measurement-matrix family, when built from a catalog

  Index obs_rank() const;
};

/// Builds a sensor with its observability matrix, indicator and gain.
/// Throws DivergedGain when the observable subsystem admits no steady gain.
SensorNode make_sensor(SensorId id, const SystemModel& model, const Matrix& meas_matrix,
                       const Matrix& meas_cov, Scalar meas_bound);

/// Same as make_sensor but leaves the gain at zero (for sensors that never
/// run a filter, or for geometry-only experiments).
SensorNode make_passive_sensor(SensorId id, const SystemModel& model, const Matrix& meas_matrix);

/// True when rank(obs_matrix) equals the number of set indicator bits.
bool indicator_matches_rank(const SensorNode& sensor);

class NetworkGraph {
 public:
  NetworkGraph() = default;
  /// Rejects graphs where any node with in-neighbors is not jointly
  /// observable from its in-neighborhood (ConstructionError).
  NetworkGraph(const SystemModel& model, std::vector<SensorNode> nodes,
               std::vector<Eigen::Vector2d> positions = {});

  std::span<const SensorNode> nodes() const { return nodes_; }
  std::span<SensorNode> nodes() { return nodes_; }
  const SensorNode& node(SensorId id) const;
  SensorNode& node(SensorId id);
  bool contains(SensorId id) const { return index_.count(id) != 0; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Eigen::Vector2d>& positions() const { return positions_; }
  std::size_t max_in_degree() const;
  // Sensors in `ids`, in the given order.
  std::vector<SensorNode> gather(const IdList& ids) const;

 private:
  std::vector<SensorNode> nodes_;
  std::vector<Eigen::Vector2d> positions_;
  std::unordered_map<SensorId, std::size_t> index_;
};

/// Joint observability of (A, [C_j; ...]) over the given sensors.
bool jointly_observable(const SystemModel& model, std::span<const SensorNode> sensors);

struct EstimatorConfig {
  Scalar consensus_weight = 0;  // lambda
  bool exclude_suspects = true;

  // Throws ContractViolation unless 0 < lambda < 1 / max in-degree.
  void validate(const NetworkGraph& graph) const;
  static EstimatorConfig defaults_for(const NetworkGraph& graph, bool exclude_suspects = true);
};

/// A x + w, with w ~ N(0, Q) truncated to the infinity-norm ball.
Vector step_state(const SystemModel& model, const Vector& state, RngStream& rng);

/// C x + v, with v ~ N(0, R) truncated to the sensor's bound.
Vector measure(const SensorNode& sensor, const Vector& state, RngStream& rng);

/// Gaussian draw conditioned on ||v||_inf <= bound. Diagonal covariances are
/// sampled coordinate-wise (the conditioned law factorizes); general ones by
/// joint rejection.
Vector sample_bounded_gaussian(const Matrix& cov, Scalar bound, RngStream& rng);

/// Keeps the error components the sensor can observe; zeroes the rest.
Vector kalman_mask(const Indicator& indicator, const Vector& error);
inline Vector kalman_mask(const SensorNode& sensor, const Vector& error) {
  return kalman_mask(sensor.indicator, error);
}

/// Steady predictor gain of the sensor's observable subsystem, embedded with
/// zero rows on unobservable coordinates.
Matrix compute_gain(const SystemModel& model, const SensorNode& sensor);

/// One consensus filter update for `sensor_id`:
///   A x_i + K_i (y_i - C_i x_i) - lambda A sum_{j in N_i \ S} (x_i - x_ij)
Vector estimator_step(const NetworkGraph& graph, const EstimatorConfig& cfg, const SystemModel& model,
                      SensorId sensor_id, const Vector& measurement,
                      const std::map<SensorId, Vector>& received, const std::set<SensorId>& suspects);

}  // namespace dads

#endif  // DADS_MODEL_HPP
