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

#include "dads/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "dads/errors.hpp"
#include "dads/linalg.hpp"

namespace dads {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

bool is_diagonal(const Matrix& m) {
  return (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0;
}

constexpr int kMaxJointRejections = 10'000'000;
constexpr Scalar kSupportTolerance = 1e-12;

}  // namespace

void SystemModel::validate() const {
  const Index n = transition.rows();
  require(n > 0 && transition.cols() == n, "transition must be square, got " + dims(transition));
  require(process_cov.rows() == n && process_cov.cols() == n,
          "process_cov must be " + std::to_string(n) + "x" + std::to_string(n));
  require((process_cov - process_cov.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          "process_cov must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(process_cov);
  require(eig.eigenvalues().minCoeff() > 0, "process_cov must be positive definite");
  require(process_bound >= 0, "process_bound must be nonnegative");
  require(initial_state.size() == n, "initial_state has wrong dimension");
}

SystemModel agv_model(Scalar process_variance, Scalar process_bound) {
  constexpr Scalar dt = 1.0 / 50.0;
  SystemModel m;
  m.transition = Matrix::Identity(4, 4);
  m.transition(0, 2) = dt;
  m.transition(1, 3) = dt;
  m.process_cov = process_variance * Matrix::Identity(4, 4);
  m.process_bound = process_bound;
  m.initial_state = Vector(4);
  m.initial_state << 50, 0, 5, 0;
  return m;
}

Index SensorNode::obs_rank() const { return numeric_rank(obs_matrix); }

SensorNode make_passive_sensor(SensorId id, const SystemModel& model, const Matrix& meas_matrix) {
  require(meas_matrix.cols() == model.state_dim(),
          "sensor " + std::to_string(id) + ": measurement matrix has " +
              std::to_string(meas_matrix.cols()) + " columns, state has " +
              std::to_string(model.state_dim()));
  SensorNode s;
  s.id = id;
  s.meas_matrix = meas_matrix;
  s.meas_cov = Matrix::Identity(meas_matrix.rows(), meas_matrix.rows());
  s.estimate = model.initial_state;
  s.gain = Matrix::Zero(model.state_dim(), meas_matrix.rows());
  s.obs_matrix = observability_matrix(model.transition, meas_matrix);
  const Scalar scale = std::max<Scalar>(1, s.obs_matrix.cwiseAbs().maxCoeff());
  s.indicator = row_support(s.obs_matrix, kSupportTolerance * scale);
  return s;
}

SensorNode make_sensor(SensorId id, const SystemModel& model, const Matrix& meas_matrix,
                       const Matrix& meas_cov, Scalar meas_bound) {
  SensorNode s = make_passive_sensor(id, model, meas_matrix);
  require(meas_cov.rows() == meas_matrix.rows() && meas_cov.cols() == meas_matrix.rows(),
          "sensor " + std::to_string(id) + ": meas_cov must be " +
              std::to_string(meas_matrix.rows()) + " square");
  require(meas_bound >= 0, "sensor " + std::to_string(id) + ": meas_bound must be nonnegative");
  s.meas_cov = meas_cov;
  s.meas_bound = meas_bound;
  s.gain = compute_gain(model, s);
  return s;
}

bool indicator_matches_rank(const SensorNode& sensor) {
  return sensor.obs_rank() == popcount(sensor.indicator);
}

NetworkGraph::NetworkGraph(const SystemModel& model, std::vector<SensorNode> nodes,
                           std::vector<Eigen::Vector2d> positions)
    : nodes_(std::move(nodes)), positions_(std::move(positions)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const SensorNode& a, const SensorNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) {
      throw ConstructionError("duplicate sensor id " + std::to_string(nodes_[i].id));
    }
  }
  require<ConstructionError>(positions_.empty() || positions_.size() == nodes_.size(),
                             "positions must be empty or one per node");
  for (SensorNode& node : nodes_) {
    std::sort(node.neighbors_in.begin(), node.neighbors_in.end());
    for (SensorId j : node.neighbors_in) {
      require<ConstructionError>(contains(j), "sensor " + std::to_string(node.id) +
                                                  " lists unknown neighbor " + std::to_string(j));
      require<ConstructionError>(j != node.id,
                                 "sensor " + std::to_string(node.id) + " lists itself as neighbor");
    }
  }
  for (const SensorNode& node : nodes_) {
    if (node.neighbors_in.empty()) continue;
    if (!jointly_observable(model, gather(node.neighbors_in))) {
      throw ConstructionError("sensor " + std::to_string(node.id) +
                              ": in-neighborhood is not jointly observable");
    }
  }
}

const SensorNode& NetworkGraph::node(SensorId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownId("unknown sensor id " + std::to_string(id));
  return nodes_[it->second];
}

SensorNode& NetworkGraph::node(SensorId id) {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownId("unknown sensor id " + std::to_string(id));
  return nodes_[it->second];
}

std::size_t NetworkGraph::max_in_degree() const {
  std::size_t d = 0;
  for (const SensorNode& n : nodes_) d = std::max(d, n.neighbors_in.size());
  return d;
}

std::vector<SensorNode> NetworkGraph::gather(const IdList& ids) const {
  std::vector<SensorNode> out;
  out.reserve(ids.size());
  for (SensorId id : ids) out.push_back(node(id));
  return out;
}

bool jointly_observable(const SystemModel& model, std::span<const SensorNode> sensors) {
  if (sensors.empty()) return false;
  Index rows = 0;
  for (const SensorNode& s : sensors) rows += s.meas_matrix.rows();
  Matrix stacked(rows, model.state_dim());
  Index r = 0;
  for (const SensorNode& s : sensors) {
    stacked.middleRows(r, s.meas_matrix.rows()) = s.meas_matrix;
    r += s.meas_matrix.rows();
  }
  return is_observable(model.transition, stacked);
}

void EstimatorConfig::validate(const NetworkGraph& graph) const {
  const std::size_t deg = std::max<std::size_t>(1, graph.max_in_degree());
  require(consensus_weight > 0 && consensus_weight < 1.0 / static_cast<Scalar>(deg),
          "consensus_weight must lie in (0, 1/" + std::to_string(deg) + ")");
}

EstimatorConfig EstimatorConfig::defaults_for(const NetworkGraph& graph, bool exclude_suspects) {
  const std::size_t deg = std::max<std::size_t>(1, graph.max_in_degree());
  return EstimatorConfig{0.5 / static_cast<Scalar>(deg), exclude_suspects};
}

Vector sample_bounded_gaussian(const Matrix& cov, Scalar bound, RngStream& rng) {
  const Index n = cov.rows();
  Vector out = Vector::Zero(n);
  if (bound == 0) return out;
  if (is_diagonal(cov)) {
    for (Index i = 0; i < n; ++i) {
      const Scalar sigma = std::sqrt(cov(i, i));
      Scalar v;
      do {
        v = sigma * rng.normal();
      } while (std::abs(v) > bound);
      out(i) = v;
    }
    return out;
  }
  const Matrix L = cov.llt().matrixL();
  for (int attempt = 0; attempt < kMaxJointRejections; ++attempt) {
    Vector z(n);
    for (Index i = 0; i < n; ++i) z(i) = rng.normal();
    out = L * z;
    if (out.cwiseAbs().maxCoeff() <= bound) return out;
  }
  throw ContractViolation("bounded Gaussian rejection sampler exceeded its attempt budget");
}

Vector step_state(const SystemModel& model, const Vector& state, RngStream& rng) {
  require(state.size() == model.state_dim(),
          "step_state: state has dimension " + std::to_string(state.size()) + ", expected " +
              std::to_string(model.state_dim()));
  return model.transition * state +
         sample_bounded_gaussian(model.process_cov, model.process_bound, rng);
}

Vector measure(const SensorNode& sensor, const Vector& state, RngStream& rng) {
  require(state.size() == sensor.meas_matrix.cols(),
          "measure: sensor " + std::to_string(sensor.id) + " expects state dimension " +
              std::to_string(sensor.meas_matrix.cols()));
  return sensor.meas_matrix * state + sample_bounded_gaussian(sensor.meas_cov, sensor.meas_bound, rng);
}

Vector kalman_mask(const Indicator& indicator, const Vector& error) {
  require(indicator.size() == error.size(), "kalman_mask: dimension mismatch");
  return error.cwiseProduct(indicator.cast<Scalar>());
}

Matrix compute_gain(const SystemModel& model, const SensorNode& sensor) {
  const Index n = model.state_dim();
  const Index m = sensor.meas_matrix.rows();
  const std::string who = "sensor " + std::to_string(sensor.id);
  std::vector<Index> keep;
  for (Index l = 0; l < n; ++l) {
    if (sensor.indicator(l)) keep.push_back(l);
  }
  if (keep.empty()) throw DivergedGain(who + ": no observable coordinates, gain diverges");

  const Index k = static_cast<Index>(keep.size());
  Matrix Ao(k, k), Co(m, k), Qo(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      Ao(a, b) = model.transition(keep[a], keep[b]);
      Qo(a, b) = model.process_cov(keep[a], keep[b]);
    }
    Co.col(a) = sensor.meas_matrix.col(keep[a]);
  }
  if (!is_observable(Ao, Co)) {
    throw DivergedGain(who + ": restricted subsystem is not observable");
  }
  const auto sol = solve_riccati(Ao, Co, Qo, sensor.meas_cov);
  if (!sol.converged) {
    throw DivergedGain(who + ": Riccati iteration did not converge after " +
                       std::to_string(sol.iterations) + " iterations");
  }
  const Matrix Ko = predictor_gain(Ao, Co, sol.P, sensor.meas_cov);
  Matrix K = Matrix::Zero(n, m);
  for (Index a = 0; a < k; ++a) K.row(keep[a]) = Ko.row(a);
  return K;
}

Vector estimator_step(const NetworkGraph& graph, const EstimatorConfig& cfg, const SystemModel& model,
                      SensorId sensor_id, const Vector& measurement,
                      const std::map<SensorId, Vector>& received, const std::set<SensorId>& suspects) {
  const SensorNode& self = graph.node(sensor_id);
  require(measurement.size() == self.meas_matrix.rows(),
          "estimator_step: sensor " + std::to_string(sensor_id) + " measurement has wrong dimension");
  for (SensorId s : suspects) {
    require(std::find(self.neighbors_in.begin(), self.neighbors_in.end(), s) != self.neighbors_in.end(),
            "estimator_step: suspect " + std::to_string(s) + " is not an in-neighbor of " +
                std::to_string(sensor_id));
  }
  const Vector& x = self.estimate;
  Vector disagreement = Vector::Zero(x.size());
  for (SensorId j : self.neighbors_in) {
    auto it = received.find(j);
    if (it == received.end()) {
      throw ContractViolation("estimator_step: sensor " + std::to_string(sensor_id) +
                              " is missing the estimate of neighbor " + std::to_string(j));
    }
    if (cfg.exclude_suspects && suspects.count(j)) continue;
    disagreement += x - it->second;
  }
  return model.transition * x + self.gain * (measurement - self.meas_matrix * x) -
         cfg.consensus_weight * (model.transition * disagreement);
}

}  // namespace dads
