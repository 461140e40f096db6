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

#include "condor/manifest.hpp"
#include "condor/run_matrix.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int cmd_run(const std::string& config_path) {
  condor::RunManifest manifest;
  try {
    manifest = condor::parse_config(config_path);
  } catch (const condor::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  const auto result = condor::run_matrix(manifest);
  for (const auto& c : result.cells) {
    if (!c.ok) std::cerr << "run " << condor::run_id(c.dataset, c.config, c.seed) << " failed: " << c.error << '\n';
  }
  std::cout << "wrote " << result.cells.size() << " runs to " << manifest.output_dir.string() << '\n';
  return result.exit_code();
}

int cmd_gen(const std::string& name, const std::string& out, std::uint64_t seed, const std::string& config_path,
            int precision) {
  std::optional<condor::StreamSpec> spec;
  try {
    if (config_path.empty()) {
      spec = condor::builtin_stream(name);
    } else {
      for (const auto& d : condor::parse_config(config_path).datasets) {
        if (d.name == name && d.synthetic) spec = d.synthetic;
      }
    }
  } catch (const condor::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  if (!spec) {
    std::cerr << "unknown synthetic dataset '" << name << "'\n";
    return 1;
  }
  spec->seed = seed;
  condor::write_csv_stream(out, condor::generate_stream(*spec), precision);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drift-adaptive stream classification with model reuse"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every (dataset, config, seed) cell of a config file");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

  std::string gen_name, gen_out, gen_config;
  std::uint64_t gen_seed = 0;
  int gen_precision = 6;
  auto* gen = app.add_subcommand("gen", "Export a synthetic stream as CSV");
  gen->add_option("dataset", gen_name, "Built-in dataset name, or a dataset section of --config")->required();
  gen->add_option("--out", gen_out, "Output CSV path")->required();
  gen->add_option("--seed", gen_seed, "Stream seed");
  gen->add_option("--config", gen_config, "Config file defining the dataset")->check(CLI::ExistingFile);
  gen->add_option("--precision", gen_precision, "Significant digits for features")->check(CLI::Range(1, 17));

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Recompute summary.csv from the logs of an output directory");
  report->add_option("output-dir", report_dir, "Output directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*gen) return cmd_gen(gen_name, gen_out, gen_seed, gen_config, gen_precision);
    const auto rows = condor::report_directory(report_dir);
    bool all_ok = true;
    for (const auto& r : rows) all_ok = all_ok && r.failed == 0;
    return all_ok ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
