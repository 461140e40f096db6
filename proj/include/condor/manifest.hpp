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
#include "condor/streams.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace condor {

struct DatasetEntry {
  std::string name;
  /// Synthetic description; unset for CSV datasets.
  std::optional<StreamSpec> synthetic;
  std::filesystem::path csv_path;
  std::string label_column = "label";
  /// Overrides every config's epoch cap for this dataset.
  std::optional<std::size_t> epoch_cap;
  std::size_t holdout_size = 500;

  bool is_csv() const { return !synthetic.has_value(); }
};

struct NamedConfig {
  std::string name;
  CondorConfig config;
};

struct RunManifest {
  std::vector<DatasetEntry> datasets;
  std::vector<NamedConfig> configs;
  std::vector<std::uint64_t> seeds;
  std::size_t trials = 10;
  std::filesystem::path output_dir = "condor-out";
  std::size_t workers = 1;

  void validate() const;
};

/// Reuse switched off: every model is a plain fit of its epoch.
NamedConfig no_reuse_ablation(const CondorConfig& base);
/// A single model retrained on each window, no reuse and no ensemble.
NamedConfig window_only_ablation(const CondorConfig& base);

/// Built-in dataset entry (see builtin_dataset_names()).
std::optional<DatasetEntry> builtin_dataset(const std::string& name);

/// Plain-text `key = value` configuration with `#` comments and
/// `[dataset.NAME]` / `[config.NAME]` sections. Keys before the first section
/// are global (trials, seeds, output_dir, workers, ablations). Unknown keys
/// and out-of-range values raise ParseError with the line number.
///
/// Without dataset sections the six built-in benchmark streams are used;
/// without config sections a single `condor` config with default values is
/// used. The `no-reuse` and `window-only` ablations of the first config are
/// appended unless `ablations = false`.
RunManifest parse_config(const std::filesystem::path& path);
RunManifest parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});

}  // namespace condor
