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

#include "condor/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace condor {

RegretLedger make_ledger(std::vector<std::vector<double>> per_model_epoch_loss, std::vector<double> per_epoch_loss,
                         std::vector<std::size_t> epoch_lengths) {
  if (per_model_epoch_loss.size() != per_epoch_loss.size() || epoch_lengths.size() != per_epoch_loss.size()) {
    throw InvalidArgument("ledger rows disagree in length");
  }
  RegretLedger ledger;
  ledger.per_model_epoch_loss = std::move(per_model_epoch_loss);
  ledger.per_epoch_loss = std::move(per_epoch_loss);
  ledger.epoch_lengths = std::move(epoch_lengths);
  for (std::size_t k = 0; k < ledger.epochs(); ++k) {
    const auto& row = ledger.per_model_epoch_loss[k];
    if (row.empty()) throw InvalidArgument("ledger epoch " + std::to_string(k + 1) + " has no models");
    ledger.best_model_per_epoch.push_back(
        static_cast<std::size_t>(std::min_element(row.begin(), row.end()) - row.begin()));
    ledger.global_loss += ledger.per_epoch_loss[k];
    ledger.total_steps += ledger.epoch_lengths[k];
  }
  return ledger;
}

RegretLedger make_ledger(const RunResult& run) {
  std::vector<std::vector<double>> rows;
  std::vector<double> losses;
  std::vector<std::size_t> lengths;
  for (const auto& e : run.epochs) {
    rows.push_back(e.model_losses);
    losses.push_back(e.ensemble_loss);
    lengths.push_back(e.length);
  }
  return make_ledger(std::move(rows), std::move(losses), std::move(lengths));
}

RegretSummary regret_summary(const RegretLedger& ledger) {
  if (ledger.epochs() < 1) throw InvalidArgument("regret summary needs at least one closed epoch with models");
  double best_sum = 0.0;
  for (std::size_t k = 0; k < ledger.epochs(); ++k) best_sum += ledger.best_loss(k);
  double log_sum = 0.0;
  for (std::size_t k = 1; k <= ledger.epochs(); ++k) log_sum += std::log(static_cast<double>(k));
  RegretSummary out;
  out.dynamic_regret = ledger.global_loss - best_sum;
  out.bound = std::sqrt(log_sum * static_cast<double>(ledger.total_steps) / 2.0);
  out.holds = out.dynamic_regret <= out.bound;
  return out;
}

std::vector<LocalRegretCheck> local_regret_checks(const RunResult& run) {
  std::vector<LocalRegretCheck> out;
  for (const auto& e : run.epochs) {
    LocalRegretCheck c;
    c.epoch = e.index;
    c.length = e.length;
    c.pool_size = e.pool_size;
    c.loss = e.ensemble_loss;
    c.best_model_loss = *std::min_element(e.model_losses.begin(), e.model_losses.end());
    c.bound = std::sqrt(static_cast<double>(e.length) / 2.0 * std::log(static_cast<double>(e.pool_size)));
    c.holds = c.loss <= c.best_model_loss + c.bound;
    out.push_back(c);
  }
  return out;
}

double weight_identity_error(const RunResult& run) {
  double worst = 0.0;
  std::size_t step = 0;
  for (const auto& e : run.epochs) {
    std::vector<double> running(e.pool_size, 0.0);
    std::vector<double> expected(e.pool_size);
    for (std::size_t i = 0; i < e.length; ++i, ++step) {
      const StepRecord& rec = run.steps[step];
      double total = 0.0;
      for (std::size_t j = 0; j < e.pool_size; ++j) {
        running[j] += rec.per_model_losses[j];
        expected[j] = e.initial_weights[j] * std::exp(-e.eta * running[j]);
        total += expected[j];
      }
      for (std::size_t j = 0; j < e.pool_size; ++j) {
        const double want = expected[j] / total;
        const double got = rec.weights_after[j];
        const double rel = std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
        worst = std::max(worst, rel);
      }
    }
  }
  return worst;
}

double prequential_accuracy(const std::vector<StepRecord>& records) {
  if (records.empty()) throw InvalidArgument("prequential accuracy of an empty run");
  std::size_t hits = 0;
  for (const auto& r : records) hits += r.predicted_label == r.true_label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double holdout_accuracy(const ModelPool& pool, const std::vector<LabeledInstance>& test_set, LossKind loss) {
  if (test_set.empty()) throw InvalidArgument("holdout accuracy of an empty test set");
  std::size_t hits = 0;
  for (const auto& item : test_set) hits += pool.predict(item.features, loss).label == item.label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(test_set.size());
}

std::vector<WeightRow> weight_concentration_report(const RunResult& run, std::size_t head, std::size_t tail) {
  std::vector<WeightRow> rows;
  std::size_t step = 0;
  for (const auto& e : run.epochs) {
    std::vector<double> running(e.pool_size, 0.0);
    for (std::size_t i = 1; i <= e.length; ++i, ++step) {
      const StepRecord& rec = run.steps[step];
      for (std::size_t j = 0; j < e.pool_size; ++j) running[j] += rec.per_model_losses[j];
      if (i > head && i + tail <= e.length) continue;
      for (std::size_t j = 0; j < e.pool_size; ++j) {
        rows.push_back({e.index, i, j + 1, rec.weights_after[j], running[j], i == e.length});
      }
    }
  }
  return rows;
}

std::vector<std::vector<double>> robustness_ratios(const std::vector<std::vector<double>>& accuracy) {
  if (accuracy.size() < 2) throw InvalidArgument("robustness needs at least two algorithms");
  const std::size_t datasets = accuracy.front().size();
  for (const auto& row : accuracy) {
    if (row.size() != datasets) throw InvalidArgument("accuracy table is ragged");
    for (double a : row) {
      if (!(a > 0.0)) throw InvalidArgument("robustness needs strictly positive accuracies");
    }
  }
  std::vector<std::vector<double>> r(accuracy.size(), std::vector<double>(datasets));
  for (std::size_t d = 0; d < datasets; ++d) {
    double worst = accuracy[0][d];
    for (const auto& row : accuracy) worst = std::min(worst, row[d]);
    for (std::size_t a = 0; a < accuracy.size(); ++a) r[a][d] = accuracy[a][d] / worst;
  }
  return r;
}

std::vector<double> robustness_scores(const std::vector<std::vector<double>>& accuracy) {
  std::vector<double> sums;
  for (const auto& row : robustness_ratios(accuracy)) sums.push_back(std::accumulate(row.begin(), row.end(), 0.0));
  return sums;
}

MeanStd mean_std(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("mean of an empty sample");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

}  // namespace condor
