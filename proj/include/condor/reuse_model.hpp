// Copyright 2026 The Condor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "condor/types.hpp"

#include <vector>

namespace condor {

/// Affine predictor score(x) = <weights, x> + offset.
struct LinearModel {
  Vector weights;
  double offset = 0.0;

  static LinearModel zero(Eigen::Index dimension) { return {Vector::Zero(dimension), 0.0}; }
  Eigen::Index dimension() const { return weights.size(); }
};

/// Raw score; its sign is the class.
double predict(const LinearModel& model, const Vector& x);

/// Previous models and their (nonnegative) combination weights.
struct ReuseTarget {
  std::vector<LinearModel> models;
  std::vector<double> betas;

  bool empty() const { return models.empty(); }
  /// sum_j beta_j * h_j(x), offsets included.
  double combined_score(const Vector& x) const;
  /// The reuse combination as a single affine model.
  LinearModel combined_model(Eigen::Index dimension) const;
};

/// Bordered least-squares SVM system
///
///   [ K + I/mu   1 ] [alpha]   [ y - sum_j beta_j yhat_j ]
///   [ 1^T        0 ] [  b  ] = [           0             ]
///
/// with the linear kernel K_ij = <x_i, x_j>.
struct GramSystem {
  Matrix matrix;
  Vector rhs;
  double mu = 0.0;
  std::size_t epoch_index = 0;

  Eigen::Index size() const { return rhs.size() - 1; }
};

struct SystemSolution {
  Vector alphas;
  double offset = 0.0;
  /// max |A z - rhs|.
  double residual = 0.0;
};

/// Matrices whose SPD block has a condition estimate above this are rejected.
inline constexpr double kConditionLimit = 1e12;

GramSystem assemble_system(const EpochBuffer& epoch, const ReuseTarget& target, double mu);

/// Solves by block elimination: the leading block K + I/mu is SPD, so it is
/// Cholesky-factored and the border is eliminated through its scalar Schur
/// complement 1^T (K + I/mu)^{-1} 1. One refinement step is applied against
/// the full bordered matrix. Throws SingularSystem when the condition
/// estimate exceeds kConditionLimit.
SystemSolution solve_system(const GramSystem& system);

/// New model = reuse combination + solved residual model:
///   weights = sum_j beta_j w_j + sum_i alpha_i x_i,  offset = sum_j beta_j b_j + b.
LinearModel build_model(const EpochBuffer& epoch, const ReuseTarget& target, double mu);

/// The system's mu corresponds to the averaged objective
///   (1/m) sum_i (f(x_i) - y_i)^2 + lambda * 1/2 ||w - w_p||^2
/// with lambda = 2 / (m * mu) and an unregularized offset.
double objective_tradeoff(double mu, std::size_t m);
/// Inverse of objective_tradeoff.
double system_mu(double lambda, std::size_t m);

}  // namespace condor
