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

#include "condor/eval.hpp"
#include "condor/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace condor {

/// printf "%.6g": the float format of every output file.
std::string format_real(double value);

/// `<dataset>_<config>_<seed>`; names cannot contain '_', so ids split back uniquely.
std::string run_id(const std::string& dataset, const std::string& config, std::uint64_t seed);

struct CellResult {
  std::string dataset;
  std::string config;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double accuracy = 0.0;  // prequential
  RegretSummary regret;
};

struct SummaryRow {
  std::string dataset;
  std::string config;
  std::size_t runs = 0;
  std::size_t failed = 0;
  double mean_acc = 0.0;
  double std_acc = 0.0;
  double dynamic_regret = 0.0;  // mean over completed runs
  double regret_bound = 0.0;    // mean over completed runs
  bool bound_holds = false;     // every completed run within its bound
  std::string status;           // "ok", "partial: ...", "failed: ..."
};

struct MatrixResult {
  std::vector<CellResult> cells;
  std::vector<SummaryRow> summary;

  bool all_ok() const;
  int exit_code() const { return all_ok() ? 0 : 2; }
};

/// Runs one (dataset, config, seed) cell and writes steps_<id>.csv,
/// weights_<id>.csv and holdout_<id>.csv into `output_dir`. Errors are
/// captured in the result rather than thrown.
CellResult run_cell(const DatasetEntry& dataset, const NamedConfig& config, std::uint64_t seed,
                    const std::filesystem::path& output_dir);

/// Every cell of the manifest on `manifest.workers` threads, then summary.csv.
/// Output files do not depend on the worker count.
MatrixResult run_matrix(const RunManifest& manifest);

/// Groups cells by (dataset, config) in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<CellResult>& cells);
void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);

/// Rebuilds the summary from the steps_ and weights_ logs in `dir` and
/// rewrites dir/summary.csv. Throws Error when the directory holds no logs.
std::vector<SummaryRow> report_directory(const std::filesystem::path& dir);

}  // namespace condor
