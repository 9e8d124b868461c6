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

#ifndef DADS_LINALG_HPP
#define DADS_LINALG_HPP

#include <cmath>

#include <Eigen/Dense>

#include "dads/types.hpp"

namespace dads {

/// Transposed stacked observability matrix [C' (CA)' ... (CA^{n-1})'].
///
/// The result is n x (m*n); row l is nonzero exactly when state dimension l
/// influences some output of (A, C) within n steps.
template <typename DerivedA, typename DerivedC>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> observability_matrix(
    const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedC>& C) {
  using S = typename DerivedA::Scalar;
  using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  const Index n = A.rows();
  const Index m = C.rows();
  M out(n, m * n);
  M block = C;
  for (Index p = 0; p < n; ++p) {
    out.middleCols(p * m, m) = block.transpose();
    block = block * A;
  }
  return out;
}

/// One bit per row: 1 when any entry exceeds `tol` in magnitude.
template <typename Derived>
Indicator row_support(const Eigen::MatrixBase<Derived>& M, typename Derived::Scalar tol = 0) {
  Indicator bits(M.rows());
  for (Index r = 0; r < M.rows(); ++r) {
    bits(r) = (M.row(r).cwiseAbs().maxCoeff() > tol) ? 1 : 0;
  }
  return bits;
}

template <typename Derived>
Index numeric_rank(const Eigen::MatrixBase<Derived>& M) {
  if (M.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>>
      qr(M);
  qr.setThreshold(1e-10);
  return qr.rank();
}

template <typename DerivedA, typename DerivedC>
bool is_observable(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedC>& C) {
  return numeric_rank(observability_matrix(A, C)) == A.rows();
}

inline Index popcount(const Indicator& bits) { return bits.template cast<Index>().sum(); }

template <typename S>
struct RiccatiSolution {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> P;  // steady a-priori covariance
  int iterations = 0;
  bool converged = false;
};

/// Fixed-point iteration of the filtering Riccati recursion
///   P <- A P A' + Q - A P C' (C P C' + R)^{-1} C P A'
/// stopping when the infinity norm of the update falls below `tol`.
template <typename DA, typename DC, typename DQ, typename DR>
RiccatiSolution<typename DA::Scalar> solve_riccati(const Eigen::MatrixBase<DA>& A,
                                                   const Eigen::MatrixBase<DC>& C,
                                                   const Eigen::MatrixBase<DQ>& Q,
                                                   const Eigen::MatrixBase<DR>& R,
                                                   typename DA::Scalar tol = 1e-10,
                                                   int max_iterations = 10000) {
  using S = typename DA::Scalar;
  using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  RiccatiSolution<S> sol;
  M P = Q;
  for (int it = 1; it <= max_iterations; ++it) {
    const M innovation_cov = C * P * C.transpose() + R;
    const M gain_term = A * P * C.transpose() * innovation_cov.inverse();
    M next = A * P * A.transpose() + Q - gain_term * C * P * A.transpose();
    next = (0.5 * (next + next.transpose())).eval();
    if (!next.allFinite()) {
      sol.P = next;
      sol.iterations = it;
      return sol;
    }
    const S delta = (next - P).cwiseAbs().rowwise().sum().maxCoeff();
    P = next;
    if (delta < tol) {
      sol.P = P;
      sol.iterations = it;
      sol.converged = true;
      return sol;
    }
  }
  sol.P = P;
  sol.iterations = max_iterations;
  return sol;
}

/// Predictor-form steady gain A P C' (C P C' + R)^{-1}, the gain that is
/// optimal for x(k+1) = A x(k) + K (y(k) - C x(k)).
template <typename DA, typename DC, typename DP, typename DR>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> predictor_gain(
    const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DC>& C,
    const Eigen::MatrixBase<DP>& P, const Eigen::MatrixBase<DR>& R) {
  return A * P * C.transpose() * (C * P * C.transpose() + R).inverse();
}

}  // namespace dads

#endif  // DADS_LINALG_HPP
