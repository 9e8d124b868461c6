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

#ifndef DADS_SELECTION_HPP
#define DADS_SELECTION_HPP

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "dads/partition.hpp"
#include "dads/rng.hpp"
#include "dads/types.hpp"

namespace dads {

enum class ObjectiveKind { stacked_norm, dimension_coupled };
enum class GainUpdateMethod {
  m1_partition_subset,
  m2_partition_related,
  m3_random_subset,
  m4_random_related,
  m5_full
};
enum class Stage1Rule { probability, ranking };

std::string_view to_string(ObjectiveKind k);
std::string_view to_string(GainUpdateMethod m);
std::string_view to_string(Stage1Rule r);
ObjectiveKind parse_objective_kind(std::string_view s);
GainUpdateMethod parse_gain_update_method(std::string_view s);
Stage1Rule parse_stage1_rule(std::string_view s);

/// Masked per-neighbor error columns at one time step, one column per id.
class ErrorMatrix {
 public:
  ErrorMatrix() = default;
  // Ids are stored ascending; columns and indicators follow the same order
  // as `ids` on input. Throws ContractViolation when a column has mass
  // outside its indicator.
  ErrorMatrix(IdList ids, Matrix columns, std::vector<Indicator> indicators);
  // Indicators derived from each column's nonzero pattern.
  ErrorMatrix(IdList ids, Matrix columns);

  const IdList& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  Index state_dim() const { return columns_.rows(); }
  const Matrix& columns() const { return columns_; }
  const Indicator& indicator(std::size_t pos) const { return indicators_[pos]; }
  // Position of `id` among ids(); throws UnknownId.
  std::size_t position(SensorId id) const;
  auto column(SensorId id) const { return columns_.col(static_cast<Index>(position(id))); }

 private:
  IdList ids_;
  Matrix columns_;
  std::vector<Indicator> indicators_;
};

/// Running per-dimension sums of squares for a growing selected set.
class ObjectiveAccumulator {
 public:
  ObjectiveAccumulator(ObjectiveKind kind, const ErrorMatrix& errors);
  void add(std::size_t pos);
  double value() const;
  // f(A) - f(A u {pos}); nonpositive.
  double gain(std::size_t pos) const;

 private:
  ObjectiveKind kind_;
  const ErrorMatrix* errors_;
  Vector sums_;
};

double objective(ObjectiveKind kind, const ErrorMatrix& errors, std::span<const SensorId> set);
double marginal_gain(ObjectiveKind kind, const ErrorMatrix& errors, std::span<const SensorId> set,
                     SensorId candidate);

struct OptimalSet {
  IdList ids;
  double value = 0;
  bool exact = true;  // false when the greedy surrogate was used
};

inline constexpr double kExhaustiveLimit = 2e5;

/// Best q-subset of `universe` (all ids when empty). Exact for stacked_norm
/// by norm ranking, exhaustive for small dimension_coupled instances, greedy
/// otherwise.
OptimalSet optimal_set(ObjectiveKind kind, const ErrorMatrix& errors, std::size_t q,
                       std::span<const SensorId> universe = {});

/// Plain greedy: repeatedly add the largest marginal gain, lowest id on ties.
IdList greedy_select(ObjectiveKind kind, const ErrorMatrix& errors, std::size_t q,
                     std::span<const SensorId> universe = {});

struct SelectionState {
  IdList candidates;               // ascending ids
  Vector log_weights;              // log w, aligned with candidates
  IdList suspects;                 // A_{i,k} in selection order
  std::vector<IdList> subset_suspects;
  std::vector<Vector> ratio;       // last distribution per subset, zero at selected members
  std::size_t update_count = 0;    // gain recomputations
  std::size_t skipped_subsets = 0; // stage-1 scans of exhausted subsets

  static SelectionState fresh(IdList candidates, std::size_t subsets);
  // Clears the per-step selection; weights reset unless persisted.
  void begin_step(bool persist_weights);
  std::size_t position(SensorId id) const;
  bool selected(SensorId id) const;
  // w / max(w), aligned with candidates.
  Vector weights() const;
};

struct DadsConfig {
  int q = 0;
  Stage1Rule stage1 = Stage1Rule::ranking;
  GainUpdateMethod method = GainUpdateMethod::m1_partition_subset;
  ObjectiveKind kind = ObjectiveKind::dimension_coupled;
  bool persist_weights = true;
  int force_first_subset = -1;  // zero-based subset forced to supply the first pick
};

struct SelectionStreams {
  std::vector<RngStream> stage1;  // one per subset
  RngStream stage2{0};

  static SelectionStreams derive(std::uint64_t master, SensorId receiver, std::size_t subsets);
};

struct RoundRecord {
  std::size_t l = 0;                 // 1-based round
  std::vector<IdList> members;       // unselected members per subset at stage 1
  std::vector<Vector> p;             // distributions per subset
  std::vector<SensorId> picks;       // stage-1 pick per subset, -1 when skipped
  SensorId chosen = -1;
  int chosen_subset = -1;
};

struct SelectionHooks {
  // Called at every round before the gain update, with the id chosen in the
  // previous round (-1 at l = 1).
  std::function<void(std::size_t l, const SelectionState& before, SensorId last_selected)> before_update;
  std::function<void(const RoundRecord&)> after_round;
};

/// Ids whose gains are recomputed after `selected` was chosen.
IdList gain_update_targets(GainUpdateMethod method, const PartitionResult& partition, SensorId selected,
                           const ErrorMatrix& errors, const SelectionState& state);

/// Recomputes G for `targets` given state.suspects and applies w <- w e^{-G}.
void apply_gain_update(ObjectiveKind kind, const ErrorMatrix& errors, const IdList& targets,
                       SelectionState& state);

/// Normalized weights over the unselected members of `subset`.
Vector distribution(const SelectionState& state, const IdList& subset, IdList* members = nullptr);

/// One full two-stage selection of cfg.q suspects at the current step.
SelectionState dads_select(const ErrorMatrix& errors, const PartitionResult& partition, SelectionState state,
                           const DadsConfig& cfg, SelectionStreams& streams,
                           const SelectionHooks& hooks = {});

/// RMSE between the two states' distributions over `subset`.
double ratio_error(const SelectionState& a, const SelectionState& b, const IdList& subset);
/// Largest componentwise gap between the two distributions.
double ratio_error_max(const SelectionState& a, const SelectionState& b, const IdList& subset);

}  // namespace dads

#endif  // DADS_SELECTION_HPP
