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

#include "condor/condor.hpp"

#include <cstddef>
#include <vector>

namespace condor {

/// Cumulative-loss accounting over the epochs of one run.
struct RegretLedger {
  double global_loss = 0.0;                                 // L_T
  std::vector<double> per_epoch_loss;                       // L_{S_k}
  std::vector<std::vector<double>> per_model_epoch_loss;    // L^{(j)}_{S_k}, one row per epoch
  std::vector<std::size_t> best_model_per_epoch;            // j*_k (0-based within the epoch's pool)
  std::vector<std::size_t> epoch_lengths;                   // m_k
  std::size_t total_steps = 0;                              // T

  std::size_t epochs() const { return per_epoch_loss.size(); }
  double best_loss(std::size_t k) const { return per_model_epoch_loss[k][best_model_per_epoch[k]]; }
};

/// Builds the ledger from per-epoch rows; fills j*_k and L_T.
RegretLedger make_ledger(std::vector<std::vector<double>> per_model_epoch_loss, std::vector<double> per_epoch_loss,
                         std::vector<std::size_t> epoch_lengths);
RegretLedger make_ledger(const RunResult& run);

struct RegretSummary {
  double dynamic_regret = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// L_T - sum_k L_{j*_k} against sqrt((sum_{k=1}^{E} ln k) * T / 2) for E ledger
/// epochs. Every ledger epoch already has at least one previous model, so
/// ledger epoch e plays the role of the e+1-th epoch of the bound.
RegretSummary regret_summary(const RegretLedger& ledger);

struct LocalRegretCheck {
  std::size_t epoch = 0;
  std::size_t length = 0;
  std::size_t pool_size = 0;
  double loss = 0.0;
  double best_model_loss = 0.0;
  double bound = 0.0;  // sqrt((m/2) ln n)
  bool holds = false;
};

/// Per-epoch check of L_{S_k} <= min_j L^{(j)} + sqrt((m_k/2) ln n_k).
std::vector<LocalRegretCheck> local_regret_checks(const RunResult& run);

/// Largest relative deviation between the recorded normalized weights and
/// beta_1 * exp(-eta * running loss), renormalized, over every step.
double weight_identity_error(const RunResult& run);

double prequential_accuracy(const std::vector<StepRecord>& records);
double holdout_accuracy(const ModelPool& pool, const std::vector<LabeledInstance>& test_set,
                        LossKind loss = LossKind::ZeroOne);

struct WeightRow {
  std::size_t epoch = 0;
  std::size_t iteration = 0;  // 1-based position inside the epoch
  std::size_t model = 0;      // 1-based position in the epoch's pool
  double weight = 0.0;        // normalized
  double cumulative_loss = 0.0;
  bool epoch_end = false;
};

/// Normalized weight trajectories at iterations 1..head and the last `tail`
/// iterations of every epoch (all iterations for short epochs).
std::vector<WeightRow> weight_concentration_report(const RunResult& run, std::size_t head = 5, std::size_t tail = 5);

/// r[a][d] = acc[a][d] / min_alpha acc[alpha][d].
std::vector<std::vector<double>> robustness_ratios(const std::vector<std::vector<double>>& accuracy);
/// Per-algorithm sums of robustness_ratios over datasets.
std::vector<double> robustness_scores(const std::vector<std::vector<double>>& accuracy);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population formula
};
MeanStd mean_std(const std::vector<double>& values);

}  // namespace condor
