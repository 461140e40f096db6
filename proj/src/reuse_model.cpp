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

#include "condor/reuse_model.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace condor {

namespace {

void check_dimension(Eigen::Index expected, Eigen::Index actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(actual) + ", expected " +
                            std::to_string(expected));
  }
}

void check_finite(const LinearModel& model) {
  if (!model.weights.allFinite() || !std::isfinite(model.offset)) throw Error("model has non-finite entries");
}

}  // namespace

double predict(const LinearModel& model, const Vector& x) {
  check_dimension(model.dimension(), x.size(), "predict");
  return model.weights.dot(x) + model.offset;
}

double ReuseTarget::combined_score(const Vector& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < models.size(); ++j) s += betas[j] * predict(models[j], x);
  return s;
}

LinearModel ReuseTarget::combined_model(Eigen::Index dimension) const {
  LinearModel out = LinearModel::zero(dimension);
  for (std::size_t j = 0; j < models.size(); ++j) {
    check_dimension(dimension, models[j].dimension(), "reuse target");
    out.weights += betas[j] * models[j].weights;
    out.offset += betas[j] * models[j].offset;
  }
  return out;
}

GramSystem assemble_system(const EpochBuffer& epoch, const ReuseTarget& target, double mu) {
  if (epoch.empty()) throw InvalidArgument("epoch " + std::to_string(epoch.epoch_index) + " is empty");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be positive and finite");
  if (target.models.size() != target.betas.size()) throw InvalidArgument("reuse target needs one beta per model");
  for (double beta : target.betas) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("reuse betas must be nonnegative");
  }

  const auto m = static_cast<Eigen::Index>(epoch.size());
  const Eigen::Index d = epoch.instances.front().features.size();
  Matrix X(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& x = epoch.instances[static_cast<std::size_t>(i)].features;
    check_dimension(d, x.size(), "epoch instance");
    X.row(i) = x.transpose();
  }
  for (const auto& model : target.models) check_dimension(d, model.dimension(), "previous model");

  GramSystem sys;
  sys.mu = mu;
  sys.epoch_index = epoch.epoch_index;
  sys.matrix = Matrix::Zero(m + 1, m + 1);
  sys.matrix.topLeftCorner(m, m).noalias() = X * X.transpose();
  sys.matrix.topLeftCorner(m, m).diagonal().array() += 1.0 / mu;
  sys.matrix.col(m).head(m).setOnes();
  sys.matrix.row(m).head(m).setOnes();

  sys.rhs = Vector::Zero(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& item = epoch.instances[static_cast<std::size_t>(i)];
    sys.rhs[i] = to_real(item.label) - target.combined_score(item.features);
  }
  return sys;
}

SystemSolution solve_system(const GramSystem& system) {
  const Eigen::Index m = system.size();
  if (m < 1 || system.matrix.rows() != m + 1 || system.matrix.cols() != m + 1) {
    throw InvalidArgument("malformed bordered system");
  }
  const auto block = system.matrix.topLeftCorner(m, m);
  Eigen::LLT<Matrix> llt(block);
  const std::string where = "epoch " + std::to_string(system.epoch_index);
  if (llt.info() != Eigen::Success) throw SingularSystem("kernel block is not positive definite in " + where, system.epoch_index);
  const double rcond = llt.rcond();
  if (!(rcond > 0.0) || 1.0 / rcond > kConditionLimit) {
    throw SingularSystem("bordered system is numerically singular in " + where + " (condition estimate " +
                             std::to_string(rcond > 0.0 ? 1.0 / rcond : INFINITY) + ")",
                         system.epoch_index);
  }

  const Vector ones = Vector::Ones(m);
  const Vector a_inv_ones = llt.solve(ones);
  const double schur = ones.dot(a_inv_ones);
  if (!(schur > 0.0) || !std::isfinite(schur)) throw SingularSystem("degenerate border in " + where, system.epoch_index);

  auto solve_once = [&](const Vector& rhs) {
    Vector z(m + 1);
    const Vector a_inv_r = llt.solve(rhs.head(m));
    const double b = (ones.dot(a_inv_r) - rhs[m]) / schur;
    z.head(m) = a_inv_r - b * a_inv_ones;
    z[m] = b;
    return z;
  };

  Vector z = solve_once(system.rhs);
  Vector r = system.rhs - system.matrix * z;
  z += solve_once(r);
  r = system.rhs - system.matrix * z;

  SystemSolution out;
  out.alphas = z.head(m);
  out.offset = z[m];
  out.residual = r.lpNorm<Eigen::Infinity>();
  if (!out.alphas.allFinite() || !std::isfinite(out.offset)) throw SingularSystem("non-finite solution in " + where, system.epoch_index);
  return out;
}

LinearModel build_model(const EpochBuffer& epoch, const ReuseTarget& target, double mu) {
  GramSystem sys = assemble_system(epoch, target, mu);
  SystemSolution sol = solve_system(sys);
  const Eigen::Index d = epoch.instances.front().features.size();
  LinearModel model = target.combined_model(d);
  for (std::size_t i = 0; i < epoch.size(); ++i) {
    model.weights += sol.alphas[static_cast<Eigen::Index>(i)] * epoch.instances[i].features;
  }
  model.offset += sol.offset;
  check_finite(model);
  return model;
}

double objective_tradeoff(double mu, std::size_t m) { return 2.0 / (static_cast<double>(m) * mu); }

double system_mu(double lambda, std::size_t m) { return 2.0 / (static_cast<double>(m) * lambda); }

}  // namespace condor
