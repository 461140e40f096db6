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

#include "condor/condor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace condor {

std::string to_string(LossKind loss) { return loss == LossKind::ZeroOne ? "zero_one" : "squared_clipped"; }

LossKind loss_from_string(const std::string& name) {
  if (name == "zero_one") return LossKind::ZeroOne;
  if (name == "squared_clipped") return LossKind::SquaredClipped;
  throw InvalidArgument("unknown loss '" + name + "' (expected zero_one or squared_clipped)");
}

std::string to_string(StepSizeRule rule) { return rule == StepSizeRule::Fixed ? "fixed" : "theory"; }

StepSizeRule step_rule_from_string(const std::string& name) {
  if (name == "fixed") return StepSizeRule::Fixed;
  if (name == "theory") return StepSizeRule::Theory;
  throw InvalidArgument("unknown step size rule '" + name + "' (expected fixed or theory)");
}

void CondorConfig::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be nonnegative");
  if (epoch_cap == 0) throw InvalidArgument("epoch cap p must be positive");
  if (capacity == 0) throw InvalidArgument("pool capacity K must be positive");
  if (!(detector_delta > 0.0 && detector_delta < 1.0)) throw InvalidArgument("detector delta must lie in (0, 1)");
  if (detector_buckets < 2) throw InvalidArgument("detector buckets must be at least 2");
  if (init_size == 0) throw InvalidArgument("init_size must be positive");
  if (renormalize_every == 0) throw InvalidArgument("renormalize_every must be positive");
}

double expert_advice(LossKind loss, double score) {
  return loss == LossKind::SquaredClipped ? std::clamp(score, -1.0, 1.0) : score;
}

double loss_value(LossKind loss, double score, Label y) {
  if (loss == LossKind::ZeroOne) return label_from_sign(score) == y ? 0.0 : 1.0;
  const double diff = std::clamp(score, -1.0, 1.0) - to_real(y);
  return std::min(1.0, diff * diff / 4.0);
}

// ---------------------------------------------------------------------------

ModelPool::ModelPool(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw InvalidArgument("pool capacity must be positive");
}

std::vector<double> ModelPool::normalized_weights() const {
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  std::vector<double> out(weights_.size());
  for (std::size_t k = 0; k < weights_.size(); ++k) out[k] = weights_[k] / total;
  return out;
}

void ModelPool::set_weights(std::vector<double> weights) {
  if (weights.size() != models_.size()) throw InvalidArgument("one weight per pool model required");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("pool weights must be positive and finite");
  }
  weights_ = std::move(weights);
}

PoolPrediction ModelPool::predict(const Vector& x, LossKind loss) const {
  if (models_.empty()) throw InvalidArgument("cannot predict with an empty model pool");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < models_.size(); ++k) {
    num += weights_[k] * expert_advice(loss, condor::predict(models_[k], x));
    den += weights_[k];
  }
  const double score = num / den;
  return {score, label_from_sign(score)};
}

std::vector<double> ModelPool::update_weights(const Vector& x, Label y, double eta, LossKind loss) {
  if (models_.empty()) throw InvalidArgument("cannot update weights of an empty model pool");
  std::vector<double> losses(models_.size());
  for (std::size_t k = 0; k < models_.size(); ++k) {
    losses[k] = loss_value(loss, condor::predict(models_[k], x), y);
    weights_[k] *= std::exp(-eta * losses[k]);
  }
  // Every weight reaching zero would make the forecast undefined.
  if (*std::max_element(weights_.begin(), weights_.end()) < 1e-280) renormalize();
  return losses;
}

void ModelPool::add_model(LinearModel model) {
  if (!models_.empty() && model.dimension() != models_.front().dimension()) {
    throw DimensionMismatch("new model dimension differs from the pool");
  }
  models_.push_back(std::move(model));
  while (models_.size() > capacity_) models_.erase(models_.begin());
  weights_.assign(models_.size(), 1.0 / static_cast<double>(models_.size()));
}

void ModelPool::renormalize() {
  const double top = *std::max_element(weights_.begin(), weights_.end());
  // Scale by the maximum first so the sum cannot underflow.
  for (double& w : weights_) w /= top;
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w = std::max(w / total, std::numeric_limits<double>::min());
}

PoolPrediction pool_predict(const ModelPool& pool, const Vector& x) { return pool.predict(x); }

ModelPool weight_update(ModelPool pool, const Vector& x, Label y, double eta, LossKind loss) {
  pool.update_weights(x, y, eta, loss);
  return pool;
}

ModelPool model_update(ModelPool pool, const EpochBuffer& epoch, const CondorConfig& config) {
  ReuseTarget target;
  if (config.reuse && !pool.empty()) {
    target.models = pool.models();
    target.betas = pool.normalized_weights();
  }
  pool.add_model(build_model(epoch, target, config.mu));
  return pool;
}

double theory_step_size(std::size_t k, std::size_t m) {
  if (k < 2) throw InvalidArgument("theory step size needs k >= 2");
  if (m < 1) throw InvalidArgument("theory step size needs m >= 1");
  return std::sqrt(8.0 * std::log(static_cast<double>(k - 1)) / static_cast<double>(m));
}

double improved_step_size(std::size_t k, double best_loss) {
  if (k < 3) throw InvalidArgument("improved step size needs k >= 3");
  if (!(best_loss > 0.0)) {
    throw InvalidArgument("improved step size diverges for best_loss <= 0; use theory_step_size instead");
  }
  return std::log1p(std::sqrt(2.0 * std::log(static_cast<double>(k - 1)) / best_loss));
}

// ---------------------------------------------------------------------------

namespace {

double epoch_eta(const CondorConfig& config, std::size_t pool_size) {
  if (config.step_size == StepSizeRule::Fixed) return config.eta;
  return theory_step_size(pool_size + 1, config.epoch_cap);
}

EpochTrace open_epoch(std::size_t index, std::size_t first_t, const ModelPool& pool, const CondorConfig& config) {
  EpochTrace e;
  e.index = index;
  e.first_t = first_t;
  e.pool_size = pool.size();
  e.eta = epoch_eta(config, pool.size());
  e.initial_weights = pool.weights();
  e.model_losses.assign(pool.size(), 0.0);
  return e;
}

}  // namespace

RunResult run_stream(const Stream& stream, const CondorConfig& config, const StepObserver& observer) {
  config.validate();
  if (stream.empty()) throw InvalidArgument("cannot run on an empty stream");
  const Eigen::Index d = stream.front().features.size();
  for (const auto& item : stream) {
    if (item.features.size() != d) throw DimensionMismatch("stream dimension changes mid-stream");
  }

  const std::size_t total = stream.size();
  RunResult result{{}, {}, ModelPool(config.capacity), config.loss};
  ModelPool& pool = result.final_pool;

  // Initial model: plain fit on the leading items.
  EpochBuffer init;
  init.epoch_index = 0;
  const std::size_t init_len = std::min({config.epoch_cap, config.init_size, total});
  init.instances.assign(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(init_len));
  pool.add_model(build_model(init, ReuseTarget{}, config.mu));

  Adwin detector(config.detector_delta, config.detector_buckets);
  EpochBuffer buffer;
  buffer.epoch_index = 1;
  EpochTrace epoch = open_epoch(1, 1, pool, config);
  result.steps.reserve(total);

  for (std::size_t t = 1; t <= total; ++t) {
    const LabeledInstance& item = stream[t - 1];
    StepRecord rec;
    rec.t = t;
    rec.epoch = epoch.index;
    const PoolPrediction pred = pool.predict(item.features, config.loss);
    rec.prediction_score = pred.score;
    rec.predicted_label = pred.label;
    rec.true_label = item.label;

    rec.per_model_losses = pool.update_weights(item.features, item.label, epoch.eta, config.loss);
    rec.ensemble_loss = loss_value(config.loss, pred.score, item.label);

    epoch.length += 1;
    epoch.ensemble_loss += rec.ensemble_loss;
    for (std::size_t k = 0; k < rec.per_model_losses.size(); ++k) epoch.model_losses[k] += rec.per_model_losses[k];
    if (epoch.length % config.renormalize_every == 0) pool.renormalize();
    rec.weights_after = pool.normalized_weights();

    buffer.instances.push_back(item);
    if (config.use_detector) {
      const double miss = pred.label == item.label ? 0.0 : 1.0;
      rec.drift_fired = detector.insert(miss).detected;
    }

    if (rec.drift_fired || t % config.epoch_cap == 0) {
      pool = model_update(std::move(pool), buffer, config);
      rec.model_updated = true;
      epoch.closed = true;
      epoch.closed_by_drift = rec.drift_fired;
      result.epochs.push_back(std::move(epoch));
      buffer.instances.clear();
      buffer.epoch_index += 1;
      detector.reset();
      epoch = open_epoch(buffer.epoch_index, t + 1, pool, config);
    }
    rec.pool_size_after = pool.size();
    if (observer) observer(t, pool);
    result.steps.push_back(std::move(rec));
  }
  if (epoch.length > 0) result.epochs.push_back(std::move(epoch));
  return result;
}

}  // namespace condor
