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

// Test-only oracles. Everything here is written from the definitions and
// shares no code with the library beyond plain data types.

#ifndef DADS_TESTS_SUPPORT_HPP
#define DADS_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dads/selection.hpp"
#include "dads/types.hpp"

namespace dads::testing {

// f(set) straight from the two formulas, summing in id order.
inline double brute_objective(ObjectiveKind kind, const Matrix& cols, const std::vector<int>& set) {
  if (kind == ObjectiveKind::stacked_norm) {
    double s = 0;
    for (int j : set) {
      for (Index r = 0; r < cols.rows(); ++r) s += cols(r, j) * cols(r, j);
    }
    return std::sqrt(s);
  }
  double total = 0;
  for (Index r = 0; r < cols.rows(); ++r) {
    double s = 0;
    for (int j : set) s += cols(r, j) * cols(r, j);
    total += std::sqrt(s);
  }
  return total;
}

// Best value over all q-subsets by plain enumeration of bitmasks.
inline double brute_optimum(ObjectiveKind kind, const Matrix& cols, int q) {
  const int n = static_cast<int>(cols.cols());
  double best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != q) continue;
    std::vector<int> set;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) set.push_back(j);
    }
    best = std::max(best, brute_objective(kind, cols, set));
  }
  return best;
}

// Random sparse error columns: each column gets a random nonempty support
// drawn from a small catalog, values in [-1, 1].
struct RandomInstance {
  IdList ids;
  Matrix cols;
};

inline RandomInstance random_instance(std::mt19937_64& gen, int n, Index dims = 4) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_int_distribution<int> support(1, (1 << dims) - 1);
  RandomInstance inst;
  inst.cols = Matrix::Zero(dims, n);
  for (int j = 0; j < n; ++j) {
    inst.ids.push_back(j + 1);
    const int mask = support(gen);
    for (Index r = 0; r < dims; ++r) {
      if (mask & (1 << r)) {
        double v = 0;
        while (v == 0) v = val(gen);
        inst.cols(r, j) = v;
      }
    }
  }
  return inst;
}

inline ErrorMatrix to_errors(const RandomInstance& inst) { return ErrorMatrix(inst.ids, inst.cols); }

}  // namespace dads::testing

#endif  // DADS_TESTS_SUPPORT_HPP
