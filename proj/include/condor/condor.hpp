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

#include "condor/detector.hpp"
#include "condor/reuse_model.hpp"
#include "condor/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace condor {

enum class LossKind { ZeroOne, SquaredClipped };

/// Fixed uses `eta`; Theory sets eta = sqrt(8 ln n / p) at every epoch start
/// for a pool of n models and epoch cap p.
enum class StepSizeRule { Fixed, Theory };

std::string to_string(LossKind loss);
LossKind loss_from_string(const std::string& name);
std::string to_string(StepSizeRule rule);
StepSizeRule step_rule_from_string(const std::string& name);

struct CondorConfig {
  double mu = 200.0;
  double eta = 0.75;
  std::size_t epoch_cap = 50;  // p
  std::size_t capacity = 25;   // K
  double detector_delta = 0.002;
  int detector_buckets = 5;
  bool use_detector = true;
  LossKind loss = LossKind::ZeroOne;
  StepSizeRule step_size = StepSizeRule::Fixed;
  /// false trains every new model without the reuse combination.
  bool reuse = true;
  /// The initial model is fit on the first min(epoch_cap, init_size) items.
  std::size_t init_size = 10;
  /// Weights are rescaled to sum 1 every this many steps inside an epoch.
  std::size_t renormalize_every = 1000;

  void validate() const;
};

/// Loss of one expert score against the label, in [0, 1].
///   zero_one:        1[sign(score) != y]
///   squared_clipped: (clip(score, -1, 1) - y)^2 / 4
double loss_value(LossKind loss, double score, Label y);

/// The value an expert contributes to the weighted forecast. Under the
/// squared_clipped loss scores are clipped to [-1, 1] first, which keeps the
/// loss convex in the forecast.
double expert_advice(LossKind loss, double score);

struct PoolPrediction {
  double score = 0.0;
  Label label = Label::Positive;
};

/// At most `capacity` models, oldest first, each with a positive weight.
class ModelPool {
 public:
  explicit ModelPool(std::size_t capacity = 25);

  std::size_t size() const { return models_.size(); }
  bool empty() const { return models_.empty(); }
  std::size_t capacity() const { return capacity_; }
  const std::vector<LinearModel>& models() const { return models_; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double> normalized_weights() const;

  /// Replaces the weights; all must be positive and finite.
  void set_weights(std::vector<double> weights);

  /// Weighted mean of the expert scores; ties at 0 go to +1. Throws on an empty pool.
  PoolPrediction predict(const Vector& x, LossKind loss = LossKind::ZeroOne) const;

  /// beta_k <- beta_k * exp(-eta * loss_k). Returns the per-model losses.
  std::vector<double> update_weights(const Vector& x, Label y, double eta, LossKind loss);

  /// Appends `model`, evicts the oldest while over capacity, resets weights to 1/|pool|.
  void add_model(LinearModel model);

  /// Divides all weights by their sum.
  void renormalize();

 private:
  std::size_t capacity_;
  std::vector<LinearModel> models_;
  std::vector<double> weights_;
};

/// Free-function forms of the pool operations.
PoolPrediction pool_predict(const ModelPool& pool, const Vector& x);
ModelPool weight_update(ModelPool pool, const Vector& x, Label y, double eta, LossKind loss);

/// Builds a model from `epoch` reusing the pool (betas = normalized weights,
/// or none when config.reuse is false), appends it and resets the weights.
ModelPool model_update(ModelPool pool, const EpochBuffer& epoch, const CondorConfig& config);

/// sqrt(8 ln(k - 1) / m) for a pool of k - 1 models and epoch length m.
double theory_step_size(std::size_t k, std::size_t m);

/// ln(1 + sqrt(2 ln(k - 1) / best_loss)). Throws when best_loss == 0 (callers
/// fall back to theory_step_size).
double improved_step_size(std::size_t k, double best_loss);

struct StepRecord {
  std::size_t t = 0;  // 1-based
  std::size_t epoch = 0;  // 1-based
  double prediction_score = 0.0;
  Label predicted_label = Label::Positive;
  Label true_label = Label::Positive;
  /// Loss of the ensemble forecast under the run's loss.
  double ensemble_loss = 0.0;
  std::vector<double> per_model_losses;
  /// Normalized weights after this step's weight update.
  std::vector<double> weights_after;
  bool drift_fired = false;
  bool model_updated = false;
  std::size_t pool_size_after = 0;
};

/// Per-epoch bookkeeping kept alongside the step records.
struct EpochTrace {
  std::size_t index = 0;  // 1-based
  std::size_t first_t = 0;
  std::size_t length = 0;
  std::size_t pool_size = 0;
  double eta = 0.0;
  std::vector<double> initial_weights;
  double ensemble_loss = 0.0;
  std::vector<double> model_losses;
  bool closed_by_drift = false;
  bool closed = false;
};

struct RunResult {
  std::vector<StepRecord> steps;
  std::vector<EpochTrace> epochs;
  ModelPool final_pool;
  LossKind loss = LossKind::ZeroOne;
};

/// Called after each step with the 1-based index and the pool that will
/// predict item t + 1 (after any model update at t).
using StepObserver = std::function<void(std::size_t t, const ModelPool& pool)>;

/// The full drift-adaptive loop: predict, reveal, update weights, feed the
/// ensemble 0-1 loss to the detector, and on detection or t mod p == 0
/// build a new model from the epoch buffer, then reset buffer and detector.
RunResult run_stream(const Stream& stream, const CondorConfig& config, const StepObserver& observer = {});

}  // namespace condor
