// Copyright 2026 The Simmap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMMAP_DETAIL_MAJORIZE_HPP
#define SIMMAP_DETAIL_MAJORIZE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "simmap/errors.hpp"
#include "simmap/layout.hpp"

namespace simmap::detail {

/// Solver for the quadratic part of the stress majorizer. V is the Laplacian
/// of the pair weights (V_ii = sum_j w_ij, V_ij = -w_ij); its pseudoinverse
/// applied to a centered right-hand side equals (V + 11^T)^{-1}, so we
/// Cholesky-factor M = V + 11^T once and reuse it every iteration. M is
/// positive definite exactly when the weight graph is connected.
class LaplacianSolver {
 public:
  /// weights: flat symmetric n*n matrix with zero diagonal.
  LaplacianSolver(std::size_t n, const std::vector<double>& weights) : n_(n), chol_(n * n, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i) continue;
        const double w = weights[i * n_ + j];
        row_sum += w;
        chol_[i * n_ + j] = -w + 1.0;
      }
      chol_[i * n_ + i] = row_sum + 1.0;
    }
    factorize();
  }

  std::size_t size() const { return n_; }

  /// Solves M z = rhs for both coordinates. The solution is automatically
  /// centered when the rhs has zero column sums.
  void solve(std::vector<Vec2>& rhs) const {
    // forward substitution L y = rhs
    for (std::size_t i = 0; i < n_; ++i) {
      double sx = rhs[i].x, sy = rhs[i].y;
      for (std::size_t k = 0; k < i; ++k) {
        const double l = chol_[i * n_ + k];
        sx -= l * rhs[k].x;
        sy -= l * rhs[k].y;
      }
      const double d = chol_[i * n_ + i];
      rhs[i].x = sx / d;
      rhs[i].y = sy / d;
    }
    // back substitution L^T z = y
    for (std::size_t ii = n_; ii-- > 0;) {
      double sx = rhs[ii].x, sy = rhs[ii].y;
      for (std::size_t k = ii + 1; k < n_; ++k) {
        const double l = chol_[k * n_ + ii];
        sx -= l * rhs[k].x;
        sy -= l * rhs[k].y;
      }
      const double d = chol_[ii * n_ + ii];
      rhs[ii].x = sx / d;
      rhs[ii].y = sy / d;
    }
  }

 private:
  void factorize() {
    for (std::size_t j = 0; j < n_; ++j) {
      double d = chol_[j * n_ + j];
      for (std::size_t k = 0; k < j; ++k) d -= chol_[j * n_ + k] * chol_[j * n_ + k];
      if (!(d > 0.0))
        throw data_error("weight graph is not connected (singular majorizer)");
      d = std::sqrt(d);
      chol_[j * n_ + j] = d;
      for (std::size_t i = j + 1; i < n_; ++i) {
        double s = chol_[i * n_ + j];
        for (std::size_t k = 0; k < j; ++k) s -= chol_[i * n_ + k] * chol_[j * n_ + k];
        chol_[i * n_ + j] = s / d;
      }
    }
  }

  std::size_t n_;
  std::vector<double> chol_;  // lower triangle holds L, L L^T = V + 11^T
};

/// One majorization step: given the linear coefficients a_ij >= 0 of the
/// majorizer (a_ij = w_ij * dhat_ij for stress, a_ij = 1 for the VOS
/// objective), computes B(Z) Z with B_ij = -a_ij / dist_ij (0 when the
/// distance is 0) and solves against the weight Laplacian.
inline std::vector<Vec2> guttman_step(const LaplacianSolver& solver,
                                      const std::vector<double>& linear_coeff,
                                      const std::vector<Vec2>& z) {
  const std::size_t n = solver.size();
  std::vector<double> b_diag(n, 0.0);
  std::vector<Vec2> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double rx = 0.0, ry = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double a = linear_coeff[i * n + j];
      if (a == 0.0) continue;
      const double d = distance(z[i], z[j]);
      if (d == 0.0) continue;  // dhat/dist -> 0 convention at coincident points
      const double b = a / d;
      b_diag[i] += b;
      rx -= b * z[j].x;
      ry -= b * z[j].y;
    }
    rhs[i].x = b_diag[i] * z[i].x + rx;
    rhs[i].y = b_diag[i] * z[i].y + ry;
  }
  solver.solve(rhs);
  return rhs;
}

}  // namespace simmap::detail

#endif  // SIMMAP_DETAIL_MAJORIZE_HPP
