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

#include "dads/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dads/errors.hpp"

namespace dads {

std::string_view to_string(ObjectiveKind k) {
  return k == ObjectiveKind::stacked_norm ? "stacked_norm" : "dimension_coupled";
}

std::string_view to_string(GainUpdateMethod m) {
  switch (m) {
    case GainUpdateMethod::m1_partition_subset: return "m1_partition_subset";
    case GainUpdateMethod::m2_partition_related: return "m2_partition_related";
    case GainUpdateMethod::m3_random_subset: return "m3_random_subset";
    case GainUpdateMethod::m4_random_related: return "m4_random_related";
    case GainUpdateMethod::m5_full: return "m5_full";
  }
  return "?";
}

std::string_view to_string(Stage1Rule r) { return r == Stage1Rule::ranking ? "ranking" : "probability"; }

ObjectiveKind parse_objective_kind(std::string_view s) {
  if (s == "stacked_norm") return ObjectiveKind::stacked_norm;
  if (s == "dimension_coupled") return ObjectiveKind::dimension_coupled;
  throw ConfigError("unknown objective '" + std::string(s) + "'");
}

GainUpdateMethod parse_gain_update_method(std::string_view s) {
  for (auto m : {GainUpdateMethod::m1_partition_subset, GainUpdateMethod::m2_partition_related,
                 GainUpdateMethod::m3_random_subset, GainUpdateMethod::m4_random_related,
                 GainUpdateMethod::m5_full}) {
    // Accept both the full name and the short "m1".."m5" form.
    if (to_string(m) == s || to_string(m).substr(0, 2) == s) return m;
  }
  throw ConfigError("unknown gain update method '" + std::string(s) + "'");
}

Stage1Rule parse_stage1_rule(std::string_view s) {
  if (s == "ranking") return Stage1Rule::ranking;
  if (s == "probability") return Stage1Rule::probability;
  throw ConfigError("unknown stage-1 rule '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// ErrorMatrix

ErrorMatrix::ErrorMatrix(IdList ids, Matrix columns, std::vector<Indicator> indicators) {
  require(static_cast<Index>(ids.size()) == columns.cols(), "ErrorMatrix: one column per id required");
  require(indicators.size() == ids.size(), "ErrorMatrix: one indicator per id required");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  ids_.reserve(ids.size());
  columns_.resize(columns.rows(), columns.cols());
  for (std::size_t p = 0; p < order.size(); ++p) {
    const std::size_t src = order[p];
    if (p > 0) require(ids[src] != ids_.back(), "ErrorMatrix: duplicate id " + std::to_string(ids[src]));
    require(indicators[src].size() == columns.rows(), "ErrorMatrix: indicator dimension mismatch");
    for (Index l = 0; l < columns.rows(); ++l) {
      require(indicators[src](l) || columns(l, static_cast<Index>(src)) == 0,
              "ErrorMatrix: column " + std::to_string(ids[src]) + " has mass outside its support");
    }
    ids_.push_back(ids[src]);
    columns_.col(static_cast<Index>(p)) = columns.col(static_cast<Index>(src));
    indicators_.push_back(std::move(indicators[src]));
  }
}

ErrorMatrix::ErrorMatrix(IdList ids, Matrix columns)
    : ErrorMatrix(ids, columns, [&] {
        std::vector<Indicator> ind;
        for (Index c = 0; c < columns.cols(); ++c) {
          Indicator bits(columns.rows());
          for (Index l = 0; l < columns.rows(); ++l) bits(l) = columns(l, c) != 0 ? 1 : 0;
          ind.push_back(bits);
        }
        return ind;
      }()) {}

std::size_t ErrorMatrix::position(SensorId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw UnknownId("error matrix has no column for id " + std::to_string(id));
  return static_cast<std::size_t>(it - ids_.begin());
}

// ---------------------------------------------------------------------------
// Objective

ObjectiveAccumulator::ObjectiveAccumulator(ObjectiveKind kind, const ErrorMatrix& errors)
    : kind_(kind), errors_(&errors), sums_(Vector::Zero(errors.state_dim())) {}

void ObjectiveAccumulator::add(std::size_t pos) {
  sums_ += errors_->columns().col(static_cast<Index>(pos)).cwiseAbs2();
}

double ObjectiveAccumulator::value() const {
  if (kind_ == ObjectiveKind::stacked_norm) return std::sqrt(sums_.sum());
  return sums_.cwiseSqrt().sum();
}

double ObjectiveAccumulator::gain(std::size_t pos) const {
  const auto col = errors_->columns().col(static_cast<Index>(pos));
  if (kind_ == ObjectiveKind::stacked_norm) {
    const double total = sums_.sum();
    return std::sqrt(total) - std::sqrt(total + col.squaredNorm());
  }
  // Only coordinates the candidate touches contribute, so candidates with
  // disjoint support never see each other's selection.
  double g = 0.0;
  for (Index l = 0; l < col.size(); ++l) {
    const double e = col(l);
    if (e == 0.0) continue;
    g -= std::sqrt(sums_(l) + e * e) - std::sqrt(sums_(l));
  }
  return g;
}

namespace {

std::vector<std::size_t> positions_of(const ErrorMatrix& errors, std::span<const SensorId> ids) {
  std::vector<std::size_t> pos;
  pos.reserve(ids.size());
  for (SensorId id : ids) pos.push_back(errors.position(id));
  std::sort(pos.begin(), pos.end());
  require(std::adjacent_find(pos.begin(), pos.end()) == pos.end(), "objective: duplicate id in set");
  return pos;
}

std::vector<std::size_t> universe_positions(const ErrorMatrix& errors, std::span<const SensorId> universe) {
  if (universe.empty()) {
    std::vector<std::size_t> all(errors.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  return positions_of(errors, universe);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

IdList ids_at(const ErrorMatrix& errors, const std::vector<std::size_t>& pos) {
  IdList out;
  out.reserve(pos.size());
  for (std::size_t p : pos) out.push_back(errors.ids()[p]);
  return out;
}

std::vector<std::size_t> greedy_positions(ObjectiveKind kind, const ErrorMatrix& errors, std::size_t q,
                                          std::vector<std::size_t> pool) {
  ObjectiveAccumulator acc(kind, errors);
  std::vector<std::size_t> chosen;
  while (chosen.size() < q && !pool.empty()) {
    std::size_t best = 0;
    double best_gain = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double g = acc.gain(pool[i]);
      if (g < best_gain) {
        best_gain = g;
        best = i;
      }
    }
    acc.add(pool[best]);
    chosen.push_back(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return chosen;
}

// Depth-first enumeration of all q-subsets with incremental column sums.
class Exhaustive {
 public:
  Exhaustive(ObjectiveKind kind, const ErrorMatrix& errors, const std::vector<std::size_t>& pool,
             std::size_t q)
      : kind_(kind), errors_(errors), pool_(pool), q_(q) {}

  OptimalSet run() {
    Vector sums = Vector::Zero(errors_.state_dim());
    current_.clear();
    recurse(0, sums);
    OptimalSet out;
    out.ids = ids_at(errors_, best_);
    out.value = best_value_;
    return out;
  }

 private:
  double value(const Vector& sums) const {
    return kind_ == ObjectiveKind::stacked_norm ? std::sqrt(sums.sum()) : sums.cwiseSqrt().sum();
  }

  void recurse(std::size_t start, const Vector& sums) {
    if (current_.size() == q_) {
      const double v = value(sums);
      if (v > best_value_) {
        best_value_ = v;
        best_ = current_;
      }
      return;
    }
    const std::size_t need = q_ - current_.size();
    for (std::size_t i = start; i + need <= pool_.size(); ++i) {
      current_.push_back(pool_[i]);
      recurse(i + 1, sums + errors_.columns().col(static_cast<Index>(pool_[i])).cwiseAbs2());
      current_.pop_back();
    }
  }

  ObjectiveKind kind_;
  const ErrorMatrix& errors_;
  const std::vector<std::size_t>& pool_;
  std::size_t q_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double best_value_ = -1.0;
};

}  // namespace

double objective(ObjectiveKind kind, const ErrorMatrix& errors, std::span<const SensorId> set) {
  ObjectiveAccumulator acc(kind, errors);
  for (std::size_t p : positions_of(errors, set)) acc.add(p);
  return acc.value();
}

double marginal_gain(ObjectiveKind kind, const ErrorMatrix& errors, std::span<const SensorId> set,
                     SensorId candidate) {
  const auto pos = positions_of(errors, set);
  const std::size_t c = errors.position(candidate);
  if (std::binary_search(pos.begin(), pos.end(), c)) {
    throw ContractViolation("marginal_gain: candidate " + std::to_string(candidate) + " is already selected");
  }
  ObjectiveAccumulator acc(kind, errors);
  for (std::size_t p : pos) acc.add(p);
  return acc.gain(c);
}

OptimalSet optimal_set(ObjectiveKind kind, const ErrorMatrix& errors, std::size_t q,
                       std::span<const SensorId> universe) {
  auto pool = universe_positions(errors, universe);
  OptimalSet out;
  if (q >= pool.size()) {
    out.ids = ids_at(errors, pool);
    ObjectiveAccumulator acc(kind, errors);
    for (std::size_t p : pool) acc.add(p);
    out.value = acc.value();
    return out;
  }
  if (q == 0) return out;
  if (kind == ObjectiveKind::stacked_norm) {
    // sqrt is monotone in the summed squared norms, so the top-q norms win.
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
      return errors.columns().col(static_cast<Index>(a)).squaredNorm() >
             errors.columns().col(static_cast<Index>(b)).squaredNorm();
    });
    pool.resize(q);
    std::sort(pool.begin(), pool.end());
    ObjectiveAccumulator acc(kind, errors);
    for (std::size_t p : pool) acc.add(p);
    out.ids = ids_at(errors, pool);
    out.value = acc.value();
    return out;
  }
  if (binomial(pool.size(), q) <= kExhaustiveLimit) return Exhaustive(kind, errors, pool, q).run();
  auto chosen = greedy_positions(kind, errors, q, pool);
  ObjectiveAccumulator acc(kind, errors);
  for (std::size_t p : chosen) acc.add(p);
  std::sort(chosen.begin(), chosen.end());
  out.ids = ids_at(errors, chosen);
  out.value = acc.value();
  out.exact = false;
  return out;
}

IdList greedy_select(ObjectiveKind kind, const ErrorMatrix& errors, std::size_t q,
                     std::span<const SensorId> universe) {
  return ids_at(errors, greedy_positions(kind, errors, q, universe_positions(errors, universe)));
}

// ---------------------------------------------------------------------------
// Selection state

SelectionState SelectionState::fresh(IdList candidates, std::size_t subsets) {
  std::sort(candidates.begin(), candidates.end());
  SelectionState s;
  s.log_weights = Vector::Zero(static_cast<Index>(candidates.size()));
  s.candidates = std::move(candidates);
  s.subset_suspects.assign(subsets, {});
  s.ratio.assign(subsets, Vector());
  return s;
}

void SelectionState::begin_step(bool persist_weights) {
  suspects.clear();
  for (IdList& s : subset_suspects) s.clear();
  if (!persist_weights) log_weights.setZero();
}

std::size_t SelectionState::position(SensorId id) const {
  auto it = std::lower_bound(candidates.begin(), candidates.end(), id);
  if (it == candidates.end() || *it != id) throw UnknownId("selection has no candidate " + std::to_string(id));
  return static_cast<std::size_t>(it - candidates.begin());
}

bool SelectionState::selected(SensorId id) const {
  return std::find(suspects.begin(), suspects.end(), id) != suspects.end();
}

Vector SelectionState::weights() const {
  if (log_weights.size() == 0) return log_weights;
  return (log_weights.array() - log_weights.maxCoeff()).exp().matrix();
}

SelectionStreams SelectionStreams::derive(std::uint64_t master, SensorId receiver, std::size_t subsets) {
  SelectionStreams s;
  const std::string label = "stage1/" + std::to_string(receiver);
  for (std::size_t g = 0; g < subsets; ++g) s.stage1.push_back(derive_stream(master, label, g));
  s.stage2 = derive_stream(master, "stage2", static_cast<std::uint64_t>(receiver));
  return s;
}

IdList gain_update_targets(GainUpdateMethod method, const PartitionResult& partition, SensorId selected,
                           const ErrorMatrix& errors, const SelectionState& state) {
  IdList out;
  switch (method) {
    case GainUpdateMethod::m1_partition_subset:
    case GainUpdateMethod::m3_random_subset: {
      const int g = partition.subset_of(selected);
      require(g >= 0, "gain_update_targets: id " + std::to_string(selected) + " is not partitioned");
      for (SensorId j : partition.subsets[static_cast<std::size_t>(g)]) {
        if (!state.selected(j)) out.push_back(j);
      }
      break;
    }
    case GainUpdateMethod::m2_partition_related:
    case GainUpdateMethod::m4_random_related: {
      const Indicator& ref = errors.indicator(errors.position(selected));
      for (std::size_t p = 0; p < errors.size(); ++p) {
        const SensorId j = errors.ids()[p];
        if (!state.selected(j) && mutual_influence(ref, errors.indicator(p)) > 0) out.push_back(j);
      }
      break;
    }
    case GainUpdateMethod::m5_full:
      for (SensorId j : state.candidates) {
        if (!state.selected(j)) out.push_back(j);
      }
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

void apply_gain_update(ObjectiveKind kind, const ErrorMatrix& errors, const IdList& targets,
                       SelectionState& state) {
  ObjectiveAccumulator acc(kind, errors);
  std::vector<std::size_t> chosen;
  for (SensorId s : state.suspects) chosen.push_back(errors.position(s));
  std::sort(chosen.begin(), chosen.end());
  for (std::size_t p : chosen) acc.add(p);
  for (SensorId j : targets) {
    const double g = acc.gain(errors.position(j));
    state.log_weights(static_cast<Index>(state.position(j))) -= g;
    ++state.update_count;
  }
}

Vector distribution(const SelectionState& state, const IdList& subset, IdList* members) {
  IdList live;
  std::vector<double> lw;
  for (SensorId j : subset) {
    if (state.selected(j)) continue;
    live.push_back(j);
    lw.push_back(state.log_weights(static_cast<Index>(state.position(j))));
  }
  Vector p(static_cast<Index>(live.size()));
  if (!live.empty()) {
    const double top = *std::max_element(lw.begin(), lw.end());
    double total = 0;
    for (std::size_t i = 0; i < lw.size(); ++i) total += p(static_cast<Index>(i)) = std::exp(lw[i] - top);
    p /= total;
  }
  if (members) *members = std::move(live);
  return p;
}

namespace {

std::size_t pick_ranking(const Vector& p) {
  std::size_t best = 0;
  for (Index i = 1; i < p.size(); ++i) {
    if (p(i) > p(static_cast<Index>(best))) best = static_cast<std::size_t>(i);
  }
  return best;
}

std::size_t pick_probability(const Vector& p, RngStream& rng) {
  const double u = rng.uniform();
  double cum = 0;
  for (Index i = 0; i < p.size(); ++i) {
    cum += p(i);
    if (u < cum) return static_cast<std::size_t>(i);
  }
  return static_cast<std::size_t>(p.size() - 1);
}

}  // namespace

SelectionState dads_select(const ErrorMatrix& errors, const PartitionResult& partition, SelectionState state,
                           const DadsConfig& cfg, SelectionStreams& streams, const SelectionHooks& hooks) {
  const std::size_t n = state.candidates.size();
  const std::size_t m = partition.size();
  require(errors.ids() == state.candidates, "dads_select: error matrix and state disagree on candidates");
  require(is_set_partition(partition, state.candidates), "dads_select: partition does not cover the candidates");
  if (cfg.q < 0 || static_cast<std::size_t>(cfg.q) > n / 2) {
    throw ConstraintError("dads_select: q=" + std::to_string(cfg.q) + " is infeasible for " +
                          std::to_string(n) + " candidates");
  }
  require(streams.stage1.size() >= m, "dads_select: one stage-1 stream per subset required");
  require(cfg.force_first_subset < static_cast<int>(m), "dads_select: forced subset out of range");
  if (state.subset_suspects.size() != m) state.subset_suspects.assign(m, {});
  if (state.ratio.size() != m) state.ratio.assign(m, Vector());

  state.begin_step(cfg.persist_weights);
  SensorId last = -1;
  for (std::size_t l = 1; l <= static_cast<std::size_t>(cfg.q); ++l) {
    if (hooks.before_update) hooks.before_update(l, state, last);
    IdList targets;
    if (l == 1) {
      targets = state.candidates;
    } else {
      targets = gain_update_targets(cfg.method, partition, last, errors, state);
    }
    apply_gain_update(cfg.kind, errors, targets, state);

    RoundRecord rec;
    rec.l = l;
    rec.members.resize(m);
    rec.p.resize(m);
    rec.picks.assign(m, -1);
    IdList shortlist;
    std::vector<int> shortlist_subset;
    for (std::size_t g = 0; g < m; ++g) {
      if (l == 1 && cfg.force_first_subset >= 0 && static_cast<int>(g) != cfg.force_first_subset) continue;
      const IdList& subset = partition.subsets[g];
      rec.p[g] = distribution(state, subset, &rec.members[g]);
      Vector full = Vector::Zero(static_cast<Index>(subset.size()));
      for (std::size_t i = 0, at = 0; i < subset.size(); ++i) {
        if (at < rec.members[g].size() && rec.members[g][at] == subset[i]) {
          full(static_cast<Index>(i)) = rec.p[g](static_cast<Index>(at++));
        }
      }
      state.ratio[g] = std::move(full);
      if (rec.members[g].empty()) {
        ++state.skipped_subsets;
        continue;
      }
      const std::size_t at = cfg.stage1 == Stage1Rule::ranking ? pick_ranking(rec.p[g])
                                                                : pick_probability(rec.p[g], streams.stage1[g]);
      rec.picks[g] = rec.members[g][at];
      shortlist.push_back(rec.picks[g]);
      shortlist_subset.push_back(static_cast<int>(g));
    }
    if (shortlist.empty()) break;
    const std::size_t s = streams.stage2.index(shortlist.size());
    last = shortlist[s];
    rec.chosen = last;
    rec.chosen_subset = shortlist_subset[s];
    state.suspects.push_back(last);
    state.subset_suspects[static_cast<std::size_t>(rec.chosen_subset)].push_back(last);
    if (hooks.after_round) hooks.after_round(rec);
  }
  return state;
}

namespace {

std::pair<Vector, Vector> paired_distributions(const SelectionState& a, const SelectionState& b,
                                               const IdList& subset) {
  if (a.candidates != b.candidates) throw ContractViolation("ratio_error: mismatched candidate universes");
  IdList ma, mb;
  Vector pa = distribution(a, subset, &ma);
  Vector pb = distribution(b, subset, &mb);
  if (ma != mb) throw ContractViolation("ratio_error: states have different unselected members");
  return {pa, pb};
}

}  // namespace

double ratio_error(const SelectionState& a, const SelectionState& b, const IdList& subset) {
  const auto [pa, pb] = paired_distributions(a, b, subset);
  if (pa.size() == 0) return 0.0;
  return std::sqrt((pa - pb).squaredNorm() / static_cast<double>(pa.size()));
}

double ratio_error_max(const SelectionState& a, const SelectionState& b, const IdList& subset) {
  const auto [pa, pb] = paired_distributions(a, b, subset);
  if (pa.size() == 0) return 0.0;
  return (pa - pb).cwiseAbs().maxCoeff();
}

}  // namespace dads
