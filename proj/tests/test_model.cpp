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

#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "dads/errors.hpp"
#include "dads/linalg.hpp"
#include "dads/model.hpp"
#include "dads/rng.hpp"
#include "dads/scenario.hpp"

using namespace dads;

namespace {

SystemModel quiet_agv() {
  SystemModel m = agv_model();
  m.process_bound = 0;
  return m;
}

Indicator bits(std::initializer_list<int> v) {
  Indicator b(static_cast<Index>(v.size()));
  Index i = 0;
  for (int x : v) b(i++) = static_cast<std::uint8_t>(x);
  return b;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("agv model is valid and integrates velocity") {
  SystemModel m = agv_model();
  CHECK_NOTHROW(m.validate());
  RngStream rng(7);
  const Vector next = step_state(quiet_agv(), m.initial_state, rng);
  CHECK(next(0) == doctest::Approx(50.1).epsilon(1e-14));
  CHECK(next(1) == 0.0);
  CHECK(next(2) == 5.0);
  CHECK(next(3) == 0.0);
}

TEST_CASE("identity dynamics without noise keep the state") {
  SystemModel m = agv_model();
  m.transition = Matrix::Identity(4, 4);
  m.process_bound = 0;
  RngStream rng(1);
  CHECK(step_state(m, m.initial_state, rng) == m.initial_state);
}

TEST_CASE("step_state rejects a wrong dimension") {
  RngStream rng(1);
  CHECK_THROWS_AS(step_state(agv_model(), Vector::Zero(3), rng), ContractViolation);
}

TEST_CASE("model validation catches broken covariances") {
  SystemModel m = agv_model();
  m.process_cov(0, 1) = 0.3;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = agv_model();
  m.process_cov(2, 2) = -1;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = agv_model();
  m.process_bound = -0.1;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
}

TEST_CASE("process noise stays inside its bound and is centred") {
  const SystemModel m = agv_model();
  RngStream rng(derive_seed(11, "noise-test"));
  constexpr int kSamples = 10000;
  Vector sum = Vector::Zero(4);
  double worst = 0;
  for (int i = 0; i < kSamples; ++i) {
    const Vector w = sample_bounded_gaussian(m.process_cov, m.process_bound, rng);
    worst = std::max(worst, w.cwiseAbs().maxCoeff());
    sum += w;
  }
  CHECK(worst <= 0.05);
  // A N(0, 0.5) truncated at 0.05 is close to uniform, sd about 0.05/sqrt(3).
  const double sd = 0.05 / std::sqrt(3.0);
  for (Index d = 0; d < 4; ++d) CHECK(std::abs(sum(d) / kSamples) <= 3 * sd / std::sqrt(double(kSamples)));
}

TEST_CASE("correlated noise uses the joint sampler and respects the bound") {
  Matrix cov(2, 2);
  cov << 1.0, 0.5, 0.5, 1.0;
  RngStream rng(3);
  for (int i = 0; i < 2000; ++i) CHECK(sample_bounded_gaussian(cov, 0.2, rng).cwiseAbs().maxCoeff() <= 0.2);
}

TEST_CASE("measurements follow C x plus bounded noise") {
  const SystemModel model = agv_model();
  SensorNode c1 = make_sensor(1, model, type_measurement(1), Matrix::Constant(1, 1, 0.5), 0.0);
  SensorNode c3 = make_sensor(3, model, type_measurement(3), Matrix::Constant(1, 1, 0.5), 0.0);
  RngStream rng(5);
  CHECK(measure(c1, model.initial_state, rng)(0) == 50.0);
  CHECK(measure(c3, model.initial_state, rng)(0) == 5.0);

  c3.meas_bound = 0.05;
  for (int i = 0; i < 5000; ++i) CHECK(std::abs(measure(c3, model.initial_state, rng)(0) - 5.0) <= 0.05);
  CHECK_THROWS_AS(measure(c3, Vector::Zero(2), rng), ContractViolation);
}

TEST_CASE("observability rows give the four indicator patterns") {
  const SystemModel model = agv_model();
  const Indicator expected[] = {bits({1, 0, 1, 0}), bits({0, 1, 0, 1}), bits({0, 0, 1, 0}), bits({0, 0, 0, 1})};
  for (int t = 1; t <= 4; ++t) {
    const SensorNode s = make_passive_sensor(t, model, type_measurement(t));
    CHECK(s.indicator == expected[t - 1]);
    CHECK(indicator_matches_rank(s));
  }
  const Matrix O = observability_matrix(model.transition, type_measurement(4));
  CHECK(O.rows() == 4);
  CHECK(O.cols() == 4);
  CHECK(row_support(O) == bits({0, 0, 0, 1}));

  Matrix c(1, 2);
  c << 1, 0;
  CHECK(row_support(observability_matrix(Matrix::Identity(2, 2), c)) == bits({1, 0}));
}

TEST_CASE("kalman mask keeps only observable coordinates") {
  CHECK(kalman_mask(bits({1, 0, 1, 0}), vec({2, 3, 4, 5})) == vec({2, 0, 4, 0}));
  CHECK(kalman_mask(bits({1, 1, 1, 1}), vec({2, 3, 4, 5})) == vec({2, 3, 4, 5}));
  CHECK(kalman_mask(bits({0, 0, 0, 0}), vec({2, 3, 4, 5})) == Vector::Zero(4));
  CHECK_THROWS_AS(kalman_mask(bits({1, 0}), vec({1, 2, 3})), ContractViolation);
}

TEST_CASE("scalar Riccati gain matches the closed form") {
  SystemModel m;
  m.transition = Matrix::Identity(1, 1);
  const double q = 0.3, r = 0.7;
  m.process_cov = Matrix::Constant(1, 1, q);
  m.process_bound = 1;
  m.initial_state = Vector::Zero(1);
  const SensorNode s = make_sensor(1, m, Matrix::Identity(1, 1), Matrix::Constant(1, 1, r), 0.1);
  // P solves P^2 = q (P + r).
  const double P = 0.5 * (q + std::sqrt(q * q + 4 * q * r));
  CHECK(s.gain(0, 0) == doctest::Approx(P / (P + r)).epsilon(1e-9));
}

TEST_CASE("gain is embedded with zeros on unobservable rows") {
  const SystemModel model = agv_model();
  const SensorNode c1 = make_sensor(1, model, type_measurement(1), Matrix::Constant(1, 1, 0.5), 0.05);
  CHECK(c1.gain(1, 0) == 0.0);
  CHECK(c1.gain(3, 0) == 0.0);
  CHECK(c1.gain(0, 0) != 0.0);
  CHECK(c1.gain(2, 0) != 0.0);
}

TEST_CASE("a blind sensor has no gain") {
  const SystemModel model = agv_model();
  SensorNode blind = make_passive_sensor(9, model, Matrix::Zero(1, 4));
  blind.meas_cov = Matrix::Constant(1, 1, 0.5);
  CHECK_THROWS_AS(compute_gain(model, blind), DivergedGain);
}

TEST_CASE("joint observability gate") {
  const SystemModel model = agv_model();
  std::vector<SensorNode> all, fast;
  for (int t = 1; t <= 4; ++t) all.push_back(make_passive_sensor(t, model, type_measurement(t)));
  fast.push_back(make_passive_sensor(3, model, type_measurement(3)));
  fast.push_back(make_passive_sensor(4, model, type_measurement(4)));
  CHECK(jointly_observable(model, all));
  CHECK_FALSE(jointly_observable(model, fast));

  std::vector<SensorNode> nodes = fast;
  nodes.push_back(make_passive_sensor(0, model, type_measurement(0)));
  nodes.back().neighbors_in = {3, 4};
  CHECK_THROWS_AS(NetworkGraph(model, nodes), ConstructionError);
}

TEST_CASE("graph construction rejects bad wiring") {
  const SystemModel model = agv_model();
  std::vector<SensorNode> nodes;
  nodes.push_back(make_passive_sensor(0, model, Matrix::Identity(4, 4)));
  nodes.push_back(make_passive_sensor(0, model, Matrix::Identity(4, 4)));
  CHECK_THROWS_AS(NetworkGraph(model, nodes), ConstructionError);
  nodes.pop_back();
  nodes[0].neighbors_in = {5};
  CHECK_THROWS_AS(NetworkGraph(model, nodes), ConstructionError);
  nodes[0].neighbors_in = {0};
  CHECK_THROWS_AS(NetworkGraph(model, nodes), ConstructionError);
}

TEST_CASE("consensus weight bounds") {
  const Scenario1 sc = build_star100(default_config());
  const EstimatorConfig def = EstimatorConfig::defaults_for(sc.graph);
  CHECK(def.consensus_weight == doctest::Approx(0.005));
  CHECK_NOTHROW(def.validate(sc.graph));
  CHECK_THROWS_AS((EstimatorConfig{0.0, true}.validate(sc.graph)), ContractViolation);
  CHECK_THROWS_AS((EstimatorConfig{0.01, true}.validate(sc.graph)), ContractViolation);
}

TEST_CASE("estimator step: agreement and no innovation gives A x") {
  const Scenario1 sc = build_star100(default_config());
  const EstimatorConfig cfg = EstimatorConfig::defaults_for(sc.graph);
  const SensorNode& hub = sc.graph.node(0);
  std::map<SensorId, Vector> received;
  for (SensorId j : hub.neighbors_in) received[j] = hub.estimate;
  const Vector y = hub.meas_matrix * hub.estimate;
  const Vector out = estimator_step(sc.graph, cfg, sc.model, 0, y, received, {});
  CHECK((out - sc.model.transition * hub.estimate).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("estimator step: single offset neighbour without gain") {
  const SystemModel model = agv_model();
  std::vector<SensorNode> nodes;
  nodes.push_back(make_passive_sensor(0, model, type_measurement(0)));
  nodes.push_back(make_passive_sensor(1, model, Matrix::Identity(4, 4)));
  nodes[0].neighbors_in = {1};
  const NetworkGraph graph(model, nodes);
  const double lambda = 0.4;
  const EstimatorConfig cfg{lambda, true};
  const Vector x = model.initial_state;
  const Vector delta = vec({0.1, -0.2, 0.3, 0.05});
  const std::map<SensorId, Vector> received = {{1, x + delta}};
  const Vector out = estimator_step(graph, cfg, model, 0, Vector::Constant(1, 123.0), received, {});
  const Vector expected = model.transition * x + lambda * (model.transition * delta);
  CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-12);

  // Excluding the only neighbour removes the consensus term.
  const Vector alone = estimator_step(graph, cfg, model, 0, Vector::Constant(1, 0.0), received, {1});
  CHECK(alone == model.transition * x);
  // Unless exclusion is switched off.
  const Vector ignored =
      estimator_step(graph, EstimatorConfig{lambda, false}, model, 0, Vector::Constant(1, 0.0), received, {1});
  CHECK((ignored - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("estimator step: contract checks") {
  const Scenario1 sc = build_star100(default_config());
  const EstimatorConfig cfg = EstimatorConfig::defaults_for(sc.graph);
  const SensorNode& hub = sc.graph.node(0);
  std::map<SensorId, Vector> received;
  for (SensorId j : hub.neighbors_in) received[j] = hub.estimate;
  const Vector y = hub.meas_matrix * hub.estimate;
  std::map<SensorId, Vector> missing = received;
  missing.erase(17);
  CHECK_THROWS_AS(estimator_step(sc.graph, cfg, sc.model, 0, y, missing, {}), ContractViolation);
  CHECK_THROWS_AS(estimator_step(sc.graph, cfg, sc.model, 0, y, received, {0}), ContractViolation);
  CHECK_THROWS_AS(estimator_step(sc.graph, cfg, sc.model, 0, Vector::Zero(2), received, {}), ContractViolation);
  CHECK_THROWS_AS(estimator_step(sc.graph, cfg, sc.model, 404, y, received, {}), UnknownId);
}

TEST_CASE("fully connected no-attack network stays bounded") {
  // Eight sensors, two per type, every node hearing the other seven.
  const SystemModel model = agv_model();
  std::vector<SensorNode> nodes;
  for (int id = 1; id <= 8; ++id) {
    const int type = (id - 1) % 4 + 1;
    nodes.push_back(make_sensor(id, model, type_measurement(type), Matrix::Constant(1, 1, 0.5), 0.05));
    for (int u = 1; u <= 8; ++u) {
      if (u != id) nodes.back().neighbors_in.push_back(u);
    }
  }
  NetworkGraph graph(model, nodes);
  const EstimatorConfig cfg = EstimatorConfig::defaults_for(graph);
  RngStream truth_rng(derive_seed(4, "truth"));
  RngStream meas_rng(derive_seed(4, "meas"));
  Vector x = model.initial_state;
  double worst = 0;
  for (int k = 1; k <= 500; ++k) {
    x = step_state(model, x, truth_rng);
    std::map<SensorId, Vector> sent;
    for (const SensorNode& n : graph.nodes()) sent[n.id] = n.estimate;
    std::map<SensorId, Vector> next;
    for (const SensorNode& n : graph.nodes()) {
      next[n.id] = estimator_step(graph, cfg, model, n.id, measure(n, x, meas_rng), sent, {});
    }
    for (SensorNode& n : graph.nodes()) {
      n.estimate = next[n.id];
      worst = std::max(worst, (n.estimate - x).cwiseAbs().maxCoeff());
    }
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 5.0);
}
