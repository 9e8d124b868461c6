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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"

#include "dads/errors.hpp"
#include "dads/partition.hpp"
#include "dads/scenario.hpp"
#include "dads/selection.hpp"
#include "support.hpp"

using namespace dads;
using dads::testing::brute_objective;
using dads::testing::brute_optimum;
using dads::testing::random_instance;
using dads::testing::to_errors;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Star neighbourhood errors: column j masked by its type indicator, values
// drawn fresh; `attacked` columns get a larger velocity offset.
struct StarFixture {
  Scenario1 sc = build_star100(default_config());
  std::vector<SensorNode> sensors = sc.graph.gather(sc.neighbors);

  ErrorMatrix errors(std::mt19937_64& gen, const std::set<SensorId>& attacked = {}) const {
    std::normal_distribution<double> noise(0.0, 0.05);
    std::uniform_real_distribution<double> amp(0.25, 0.5);
    Matrix cols(4, static_cast<Index>(sensors.size()));
    std::vector<Indicator> inds;
    for (std::size_t i = 0; i < sensors.size(); ++i) {
      Vector e(4);
      for (Index d = 0; d < 4; ++d) e(d) = noise(gen);
      if (attacked.count(sensors[i].id)) {
        e(2) += amp(gen);
        e(3) -= amp(gen);
      }
      cols.col(static_cast<Index>(i)) = kalman_mask(sensors[i], e);
      inds.push_back(sensors[i].indicator);
    }
    return ErrorMatrix(sc.neighbors, cols, inds);
  }
};

std::vector<int> positions(const IdList& ids) {
  std::vector<int> out;
  for (SensorId id : ids) out.push_back(id - 1);
  return out;
}

// Centralized multiplicative-weights selection written independently:
// every round, every unselected candidate's log-weight drops by its gain,
// then one id is drawn from the normalized weights.
IdList centralized_oracle(ObjectiveKind kind, const Matrix& cols, const IdList& ids, int q, Stage1Rule rule,
                          RngStream stage1, RngStream stage2) {
  const std::size_t n = ids.size();
  std::vector<double> lw(n, 0.0);
  std::vector<bool> taken(n, false);
  std::vector<int> chosen;
  IdList out;
  for (int l = 0; l < q; ++l) {
    const double base = brute_objective(kind, cols, chosen);
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      std::vector<int> with = chosen;
      with.push_back(static_cast<int>(j));
      lw[j] -= base - brute_objective(kind, cols, with);
    }
    std::vector<std::size_t> live;
    double top = -1e300;
    for (std::size_t j = 0; j < n; ++j) {
      if (!taken[j]) {
        live.push_back(j);
        top = std::max(top, lw[j]);
      }
    }
    std::vector<double> p;
    double total = 0;
    for (std::size_t j : live) total += p.emplace_back(std::exp(lw[j] - top));
    std::size_t pick = 0;
    if (rule == Stage1Rule::ranking) {
      for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] > p[pick]) pick = i;
      }
    } else {
      const double u = stage1.uniform();
      double cum = 0;
      pick = p.size() - 1;
      for (std::size_t i = 0; i < p.size(); ++i) {
        cum += p[i] / total;
        if (u < cum) {
          pick = i;
          break;
        }
      }
    }
    stage2.index(1);
    taken[live[pick]] = true;
    chosen.push_back(static_cast<int>(live[pick]));
    out.push_back(ids[live[pick]]);
  }
  return out;
}

}  // namespace

TEST_CASE("objective examples") {
  const ErrorMatrix one({7}, vec({3, 0, 4, 0}));
  const IdList set = {7};
  CHECK(objective(ObjectiveKind::stacked_norm, one, set) == doctest::Approx(5.0));
  CHECK(objective(ObjectiveKind::dimension_coupled, one, set) == doctest::Approx(7.0));
  CHECK(objective(ObjectiveKind::stacked_norm, one, {}) == 0.0);
  CHECK(objective(ObjectiveKind::dimension_coupled, one, {}) == 0.0);
  const IdList unknown = {8};
  CHECK_THROWS_AS(objective(ObjectiveKind::stacked_norm, one, unknown), UnknownId);

  Matrix cols(4, 2);
  cols << 1, 0, 0, 2, -3, 0, 0, 0.5;
  const ErrorMatrix two({1, 2}, cols);
  const IdList a = {1}, b = {2}, ab = {1, 2};
  CHECK(objective(ObjectiveKind::dimension_coupled, two, ab) ==
        objective(ObjectiveKind::dimension_coupled, two, a) + objective(ObjectiveKind::dimension_coupled, two, b));
}

TEST_CASE("error matrix validates supports and orders ids") {
  Matrix cols(2, 2);
  cols << 1, 0, 0, 2;
  std::vector<Indicator> inds(2, Indicator::Zero(2));
  inds[0](0) = 1;
  inds[1](0) = 1;
  CHECK_THROWS_AS(ErrorMatrix({1, 2}, cols, inds), ContractViolation);
  const ErrorMatrix m({5, 3}, cols);
  CHECK(m.ids() == IdList{3, 5});
  CHECK(m.column(5)(0) == 1.0);
  CHECK(m.column(3)(1) == 2.0);
  CHECK_THROWS_AS(m.position(4), UnknownId);
}

TEST_CASE("marginal gain sign and singleton value") {
  const ErrorMatrix one({1}, vec({3, 0, 4, 0}));
  CHECK(marginal_gain(ObjectiveKind::stacked_norm, one, {}, 1) == doctest::Approx(-5.0));
  const IdList set = {1};
  CHECK_THROWS_AS(marginal_gain(ObjectiveKind::stacked_norm, one, set, 1), ContractViolation);
}

TEST_CASE("objectives match the brute oracle") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(gen, 8);
    const ErrorMatrix e = to_errors(inst);
    const IdList set = {1, 3, 4, 8};
    for (ObjectiveKind k : {ObjectiveKind::stacked_norm, ObjectiveKind::dimension_coupled}) {
      CHECK(objective(k, e, set) == doctest::Approx(brute_objective(k, inst.cols, positions(set))).epsilon(1e-12));
    }
  }
}

TEST_CASE("monotone and submodular on random chains") {
  std::mt19937_64 gen(8);
  int violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(gen, 8);
    const ErrorMatrix e = to_errors(inst);
    for (ObjectiveKind k : {ObjectiveKind::stacked_norm, ObjectiveKind::dimension_coupled}) {
      for (std::uint32_t B = 0; B < 256; B += 7) {
        IdList b;
        for (int j = 0; j < 8; ++j) {
          if (B & (1u << j)) b.push_back(j + 1);
        }
        // A is every other element of B.
        IdList a;
        for (std::size_t i = 0; i < b.size(); i += 2) a.push_back(b[i]);
        for (SensorId x = 1; x <= 8; ++x) {
          if (std::count(b.begin(), b.end(), x)) continue;
          const double ga = marginal_gain(k, e, a, x);
          const double gb = marginal_gain(k, e, b, x);
          if (ga > 1e-12 || gb > 1e-12) ++violations;
          if (std::abs(ga) + 1e-12 < std::abs(gb)) ++violations;
        }
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("gain locality is bit-exact for disjoint supports") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(gen, 10);
    const ErrorMatrix e = to_errors(inst);
    const IdList base = {2, 5};
    for (SensorId x = 1; x <= 10; ++x) {
      if (x == 2 || x == 5) continue;
      IdList grown = base;
      grown.push_back(x);
      for (SensorId y = 1; y <= 10; ++y) {
        if (std::count(grown.begin(), grown.end(), y)) continue;
        if (mutual_influence(e.indicator(e.position(x)), e.indicator(e.position(y))) != 0) continue;
        CHECK(marginal_gain(ObjectiveKind::dimension_coupled, e, base, y) ==
              marginal_gain(ObjectiveKind::dimension_coupled, e, grown, y));
      }
    }
  }
}

TEST_CASE("optimal set examples") {
  Matrix cols = Matrix::Zero(1, 4);
  cols << 5, 3, 2, 1;
  const ErrorMatrix e({1, 2, 3, 4}, cols);
  const OptimalSet best = optimal_set(ObjectiveKind::stacked_norm, e, 2);
  CHECK(std::set<SensorId>(best.ids.begin(), best.ids.end()) == std::set<SensorId>{1, 2});
  CHECK(best.value == doctest::Approx(std::sqrt(34.0)));
  CHECK(best.exact);
  const OptimalSet all = optimal_set(ObjectiveKind::dimension_coupled, e, 4);
  CHECK(all.ids.size() == 4);
  CHECK(optimal_set(ObjectiveKind::dimension_coupled, e, 5).ids.size() == 4);
}

TEST_CASE("exhaustive optimum matches brute force and dominates greedy") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 8 + trial % 5;
    const int q = 1 + trial % 4;
    const auto inst = random_instance(gen, n);
    const ErrorMatrix e = to_errors(inst);
    for (ObjectiveKind k : {ObjectiveKind::stacked_norm, ObjectiveKind::dimension_coupled}) {
      const double oracle = brute_optimum(k, inst.cols, q);
      const OptimalSet best = optimal_set(k, e, static_cast<std::size_t>(q));
      CHECK(best.exact);
      CHECK(best.value == doctest::Approx(oracle).epsilon(1e-12));
      const double g = objective(k, e, greedy_select(k, e, static_cast<std::size_t>(q)));
      CHECK(g <= oracle + 1e-12);
      CHECK(g >= (1 - 1 / std::numbers::e) * oracle - 1e-12);
    }
  }
}

TEST_CASE("large dimension-coupled instances fall back to greedy") {
  std::mt19937_64 gen(2);
  const auto inst = random_instance(gen, 60);
  const ErrorMatrix e = to_errors(inst);
  const OptimalSet s = optimal_set(ObjectiveKind::dimension_coupled, e, 20);
  CHECK_FALSE(s.exact);
  CHECK(s.ids.size() == 20);
}

TEST_CASE("gain update targets on the star") {
  StarFixture fx;
  std::mt19937_64 gen(1);
  const ErrorMatrix e = fx.errors(gen);
  const PartitionResult& part = fx.sc.partition;
  SelectionState st = SelectionState::fresh(fx.sc.neighbors, part.size());
  st.suspects = {90};

  const IdList m1 = gain_update_targets(GainUpdateMethod::m1_partition_subset, part, 90, e, st);
  CHECK(m1.size() == 24);
  for (SensorId j : m1) CHECK((j >= 76 && j <= 100 && j != 90));

  const IdList m2 = gain_update_targets(GainUpdateMethod::m2_partition_related, part, 90, e, st);
  CHECK(m2.size() == 49);
  for (SensorId j : m2) CHECK(((j >= 26 && j <= 50) || (j >= 76 && j <= 100)));

  const IdList m5 = gain_update_targets(GainUpdateMethod::m5_full, part, 90, e, st);
  CHECK(m5.size() == 99);
}

TEST_CASE("distribution normalizes the weights of unselected members") {
  SelectionState st = SelectionState::fresh({1, 2, 3, 4}, 1);
  st.log_weights = vec({0.0, 0.0, std::log(2.0), 5.0});
  st.suspects = {4};
  IdList members;
  const Vector p = distribution(st, {1, 2, 3, 4}, &members);
  CHECK(members == IdList{1, 2, 3});
  CHECK(p(0) == doctest::Approx(0.25));
  CHECK(p(1) == doctest::Approx(0.25));
  CHECK(p(2) == doctest::Approx(0.5));
}

TEST_CASE("ratio error examples") {
  SelectionState a = SelectionState::fresh({1, 2, 3}, 1);
  SelectionState b = a;
  CHECK(ratio_error(a, b, {1, 2, 3}) == 0.0);
  a.log_weights = vec({std::log(0.25), std::log(0.25), std::log(0.5)});
  b.log_weights = vec({std::log(0.3), std::log(0.2), std::log(0.5)});
  CHECK(ratio_error_max(a, b, {1, 2, 3}) == doctest::Approx(0.05));
  CHECK(ratio_error(a, b, {1, 2, 3}) == doctest::Approx(std::sqrt(0.005 / 3)));
  SelectionState c = SelectionState::fresh({1, 2, 4}, 1);
  CHECK_THROWS_AS(ratio_error(a, c, {1, 2}), ContractViolation);
}

TEST_CASE("dads_select structural invariants") {
  StarFixture fx;
  std::mt19937_64 gen(3);
  for (Stage1Rule rule : {Stage1Rule::ranking, Stage1Rule::probability}) {
    for (GainUpdateMethod method : {GainUpdateMethod::m1_partition_subset, GainUpdateMethod::m2_partition_related,
                                    GainUpdateMethod::m5_full}) {
      SelectionState st = SelectionState::fresh(fx.sc.neighbors, 4);
      SelectionStreams streams = SelectionStreams::derive(1, 0, 4);
      DadsConfig cfg{.q = 40, .stage1 = rule, .method = method};
      for (int k = 0; k < 5; ++k) {
        SelectionHooks hooks;
        hooks.after_round = [&](const RoundRecord& rec) {
          for (const Vector& p : rec.p) {
            if (p.size() == 0) continue;
            CHECK((p.array() >= 0).all());
            CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
          }
        };
        st = dads_select(fx.errors(gen), fx.sc.partition, st, cfg, streams, hooks);
        CHECK(st.suspects.size() == 40);
        std::set<SensorId> uni;
        std::size_t total = 0;
        for (const IdList& s : st.subset_suspects) {
          total += s.size();
          uni.insert(s.begin(), s.end());
        }
        CHECK(total == 40);
        CHECK(uni == std::set<SensorId>(st.suspects.begin(), st.suspects.end()));
      }
    }
  }
}

TEST_CASE("dads_select rejects infeasible q and bad forcing") {
  StarFixture fx;
  std::mt19937_64 gen(3);
  const ErrorMatrix e = fx.errors(gen);
  SelectionStreams streams = SelectionStreams::derive(1, 0, 4);
  SelectionState st = SelectionState::fresh(fx.sc.neighbors, 4);
  CHECK_THROWS_AS(dads_select(e, fx.sc.partition, st, DadsConfig{.q = 51}, streams), ConstraintError);
  CHECK_THROWS_AS(dads_select(e, fx.sc.partition, st, DadsConfig{.q = 5, .force_first_subset = 4}, streams),
                  ContractViolation);
}

TEST_CASE("exhausted subsets are skipped") {
  Matrix cols(1, 6);
  cols << 1, 2, 3, 4, 5, 6;
  const ErrorMatrix e({1, 2, 3, 4, 5, 6}, cols);
  PartitionResult part;
  part.subsets = {{6}, {1, 2, 3, 4, 5}};
  SelectionStreams streams = SelectionStreams::derive(4, 0, 2);
  const SelectionState st = dads_select(e, part, SelectionState::fresh({1, 2, 3, 4, 5, 6}, 2),
                                        DadsConfig{.q = 3, .force_first_subset = 0}, streams);
  CHECK(st.suspects.front() == 6);
  CHECK(st.suspects.size() == 3);
  CHECK(st.skipped_subsets == 2);
}

TEST_CASE("ranking is invariant to rescaling a subset's weights") {
  StarFixture fx;
  std::mt19937_64 gen(12);
  const ErrorMatrix e = fx.errors(gen);
  SelectionState base = SelectionState::fresh(fx.sc.neighbors, 4);
  SelectionStreams s1 = SelectionStreams::derive(1, 0, 4);
  base = dads_select(e, fx.sc.partition, base, DadsConfig{.q = 10}, s1);
  SelectionState shifted = base;
  for (SensorId j : fx.sc.partition.subsets[2]) shifted.log_weights(shifted.position(j)) += 123.0;
  SelectionStreams a = SelectionStreams::derive(2, 0, 4), b = SelectionStreams::derive(2, 0, 4);
  const ErrorMatrix e2 = fx.errors(gen);
  const SelectionState ra = dads_select(e2, fx.sc.partition, base, DadsConfig{.q = 20}, a);
  const SelectionState rb = dads_select(e2, fx.sc.partition, shifted, DadsConfig{.q = 20}, b);
  CHECK(ra.suspects == rb.suspects);
}

TEST_CASE("one subset with full updates is the centralized scheme") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_instance(gen, 12);
    const ErrorMatrix e = to_errors(inst);
    const PartitionResult single = partition_single(inst.ids);
    for (Stage1Rule rule : {Stage1Rule::ranking, Stage1Rule::probability}) {
      for (ObjectiveKind kind : {ObjectiveKind::stacked_norm, ObjectiveKind::dimension_coupled}) {
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(trial);
        SelectionStreams streams = SelectionStreams::derive(seed, 0, 1);
        const SelectionState st =
            dads_select(e, single, SelectionState::fresh(inst.ids, 1),
                        DadsConfig{.q = 6, .stage1 = rule, .method = GainUpdateMethod::m5_full, .kind = kind}, streams);
        const SelectionStreams fresh = SelectionStreams::derive(seed, 0, 1);
        CHECK(st.suspects == centralized_oracle(kind, inst.cols, inst.ids, 6, rule, fresh.stage1[0], fresh.stage2));
      }
    }
  }
}

TEST_CASE("single-subset ranking on fresh weights starts with the best singleton") {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(gen, 9);
    const ErrorMatrix e = to_errors(inst);
    SelectionStreams streams = SelectionStreams::derive(1, 0, 1);
    const SelectionState st =
        dads_select(e, partition_single(inst.ids), SelectionState::fresh(inst.ids, 1),
                    DadsConfig{.q = 1, .method = GainUpdateMethod::m5_full}, streams);
    CHECK(st.suspects == greedy_select(ObjectiveKind::dimension_coupled, e, 1));
  }
}

TEST_CASE("update count scales with the number of subsets") {
  StarFixture fx;
  std::mt19937_64 gen(6);
  SelectionState d = SelectionState::fresh(fx.sc.neighbors, 4);
  SelectionState c = SelectionState::fresh(fx.sc.neighbors, 1);
  SelectionStreams sd = SelectionStreams::derive(1, 0, 4), sc = SelectionStreams::derive(1, 0, 1);
  const PartitionResult single = partition_single(fx.sc.neighbors);
  for (int k = 0; k < 50; ++k) {
    const ErrorMatrix e = fx.errors(gen);
    d = dads_select(e, fx.sc.partition, d, DadsConfig{.q = 40}, sd);
    c = dads_select(e, single, c, DadsConfig{.q = 40, .method = GainUpdateMethod::m5_full}, sc);
  }
  const double ratio = static_cast<double>(d.update_count) / (static_cast<double>(c.update_count) / 4.0);
  CHECK(ratio > 0.8);
  CHECK(ratio < 1.2);
}

TEST_CASE("forced first pick from the last subset perturbs only its partner") {
  StarFixture fx;
  std::mt19937_64 gen(9);
  const PartitionResult& part = fx.sc.partition;
  SelectionState st = SelectionState::fresh(fx.sc.neighbors, 4);
  SelectionStreams streams = SelectionStreams::derive(5, 0, 4);
  for (int k = 0; k < 20; ++k) {
    std::set<SensorId> attacked;
    for (SensorId j = 1; j <= 100; j += 3) attacked.insert(j);
    const ErrorMatrix e = fx.errors(gen, attacked);
    std::vector<double> err(4, -1);
    SelectionHooks hooks;
    hooks.before_update = [&](std::size_t l, const SelectionState& before, SensorId last) {
      if (l != 2) return;
      CHECK(part.subset_of(last) == 3);
      SelectionState a = before, b = before;
      apply_gain_update(ObjectiveKind::dimension_coupled, e,
                        gain_update_targets(GainUpdateMethod::m1_partition_subset, part, last, e, a), a);
      apply_gain_update(ObjectiveKind::dimension_coupled, e,
                        gain_update_targets(GainUpdateMethod::m2_partition_related, part, last, e, b), b);
      for (std::size_t g = 0; g < 4; ++g) err[g] = ratio_error(a, b, part.subsets[g]);
    };
    st = dads_select(e, part, st, DadsConfig{.q = 40, .force_first_subset = 3}, streams, hooks);
    CHECK(err[0] == 0.0);
    CHECK(err[2] == 0.0);
    CHECK(err[3] == 0.0);
    CHECK(err[1] > 0.0);
  }
}

TEST_CASE("weights persist across steps unless reset") {
  StarFixture fx;
  std::mt19937_64 gen(10);
  const ErrorMatrix e = fx.errors(gen);
  SelectionStreams s = SelectionStreams::derive(1, 0, 4);
  SelectionState kept = dads_select(e, fx.sc.partition, SelectionState::fresh(fx.sc.neighbors, 4),
                                    DadsConfig{.q = 5}, s);
  const Vector after_one = kept.log_weights;
  kept.begin_step(true);
  CHECK(kept.log_weights == after_one);
  CHECK(kept.suspects.empty());
  kept.begin_step(false);
  CHECK(kept.log_weights == Vector::Zero(100));
}

TEST_CASE("enum names round-trip") {
  for (auto m : {GainUpdateMethod::m1_partition_subset, GainUpdateMethod::m2_partition_related,
                 GainUpdateMethod::m3_random_subset, GainUpdateMethod::m4_random_related, GainUpdateMethod::m5_full}) {
    CHECK(parse_gain_update_method(to_string(m)) == m);
  }
  CHECK(parse_gain_update_method("m3") == GainUpdateMethod::m3_random_subset);
  CHECK(parse_objective_kind(to_string(ObjectiveKind::stacked_norm)) == ObjectiveKind::stacked_norm);
  CHECK(parse_stage1_rule("probability") == Stage1Rule::probability);
  CHECK_THROWS(parse_stage1_rule("maybe"));
}
