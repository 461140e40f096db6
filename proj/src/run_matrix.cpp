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

#include "condor/run_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace condor {

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string run_id(const std::string& dataset, const std::string& config, std::uint64_t seed) {
  return dataset + "_" + config + "_" + std::to_string(seed);
}

bool MatrixResult::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.ok; });
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out.flush()) throw Error("write failed for '" + path.string() + "'");
}

std::string steps_csv(const RunResult& run) {
  std::ostringstream out;
  out << "t,true_label,pred_label,score,loss,drift_fired,pool_size\n";
  for (const auto& r : run.steps) {
    out << r.t << ',' << to_int(r.true_label) << ',' << to_int(r.predicted_label) << ','
        << format_real(r.prediction_score) << ',' << format_real(r.ensemble_loss) << ',' << (r.drift_fired ? 1 : 0)
        << ',' << r.pool_size_after << '\n';
  }
  return out.str();
}

std::string weights_csv(const RunResult& run) {
  std::ostringstream out;
  out << "epoch,iteration,model,weight,cum_loss,epoch_end\n";
  for (const auto& w : weight_concentration_report(run)) {
    out << w.epoch << ',' << w.iteration << ',' << w.model << ',' << format_real(w.weight) << ','
        << format_real(w.cumulative_loss) << ',' << (w.epoch_end ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error("'" + path.string() + "' is empty");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_row(line);
    if (row.size() != columns) throw Error("'" + path.string() + "' has a malformed row");
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw Error("malformed number '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) { return static_cast<std::size_t>(std::stoull(s)); }

}  // namespace

CellResult run_cell(const DatasetEntry& dataset, const NamedConfig& named, std::uint64_t seed,
                    const std::filesystem::path& output_dir) {
  CellResult cell{dataset.name, named.name, seed, false, {}, 0.0, {}};
  try {
    CondorConfig config = named.config;
    if (dataset.epoch_cap) config.epoch_cap = *dataset.epoch_cap;

    Stream stream;
    std::optional<StreamSpec> spec = dataset.synthetic;
    if (spec) {
      spec->seed = seed;
      stream = generate_stream(*spec);
    } else {
      stream = read_csv_stream(dataset.csv_path, dataset.label_column);
    }

    std::ostringstream holdout;
    holdout << "checkpoint,t,accuracy\n";
    StepObserver observer;
    if (spec) {
      observer = [&](std::size_t t, const ModelPool& pool) {
        if (t % config.epoch_cap != 0) return;
        const std::size_t checkpoint = t / config.epoch_cap;
        // Test on the concept of the next item; the last checkpoint reuses the final concept.
        const std::size_t next = std::min(t, spec->total_length - 1);
        const auto batch = holdout_batch(*spec, next, checkpoint, dataset.holdout_size);
        holdout << checkpoint << ',' << t << ',' << format_real(holdout_accuracy(pool, batch, config.loss)) << '\n';
      };
    }

    const RunResult run = run_stream(stream, config, observer);
    cell.accuracy = prequential_accuracy(run.steps);
    cell.regret = regret_summary(make_ledger(run));

    const std::string id = run_id(dataset.name, named.name, seed);
    write_file(output_dir / ("steps_" + id + ".csv"), steps_csv(run));
    write_file(output_dir / ("weights_" + id + ".csv"), weights_csv(run));
    write_file(output_dir / ("holdout_" + id + ".csv"), holdout.str());
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

MatrixResult run_matrix(const RunManifest& manifest) {
  manifest.validate();
  std::error_code ec;
  std::filesystem::create_directories(manifest.output_dir, ec);
  if (ec) throw Error("cannot create output directory '" + manifest.output_dir.string() + "': " + ec.message());

  struct Job {
    const DatasetEntry* dataset;
    const NamedConfig* config;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& d : manifest.datasets) {
    for (const auto& c : manifest.configs) {
      for (auto s : manifest.seeds) jobs.push_back({&d, &c, s});
    }
  }

  MatrixResult result;
  result.cells.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      result.cells[i] = run_cell(*jobs[i].dataset, *jobs[i].config, jobs[i].seed, manifest.output_dir);
    }
  };
  const std::size_t n_threads = std::min(manifest.workers, jobs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.summary = summarize(result.cells);
  write_summary(manifest.output_dir / "summary.csv", result.summary);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<CellResult>& cells) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<const CellResult*>> groups;
  for (const auto& c : cells) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const SummaryRow& r) { return r.dataset == c.dataset && r.config == c.config; });
    if (it == rows.end()) {
      SummaryRow row;
      row.dataset = c.dataset;
      row.config = c.config;
      rows.push_back(std::move(row));
      groups.emplace_back();
      it = rows.end() - 1;
    }
    groups[static_cast<std::size_t>(it - rows.begin())].push_back(&c);
  }

  for (std::size_t g = 0; g < rows.size(); ++g) {
    SummaryRow& row = rows[g];
    std::vector<double> accs;
    std::string first_error;
    row.bound_holds = true;
    for (const CellResult* c : groups[g]) {
      row.runs += 1;
      if (!c->ok) {
        row.failed += 1;
        if (first_error.empty()) first_error = "seed " + std::to_string(c->seed) + ": " + c->error;
        continue;
      }
      accs.push_back(c->accuracy);
      row.dynamic_regret += c->regret.dynamic_regret;
      row.regret_bound += c->regret.bound;
      row.bound_holds = row.bound_holds && c->regret.holds;
    }
    if (accs.empty()) {
      row.bound_holds = false;
      row.status = "failed: " + first_error;
      continue;
    }
    const MeanStd ms = mean_std(accs);
    row.mean_acc = ms.mean;
    row.std_acc = ms.stddev;
    row.dynamic_regret /= static_cast<double>(accs.size());
    row.regret_bound /= static_cast<double>(accs.size());
    row.status = row.failed == 0 ? "ok"
                                 : "partial " + std::to_string(row.failed) + "/" + std::to_string(row.runs) +
                                       " failed; " + first_error;
  }
  return rows;
}

void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "dataset,config,mean_acc,std_acc,dynamic_regret,regret_bound,bound_holds,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    const bool any = r.failed < r.runs;
    out << r.dataset << ',' << r.config << ',' << (any ? format_real(r.mean_acc) : "") << ','
        << (any ? format_real(r.std_acc) : "") << ',' << (any ? format_real(r.dynamic_regret) : "") << ','
        << (any ? format_real(r.regret_bound) : "") << ',' << (r.bound_holds ? "true" : "false") << ',' << status
        << '\n';
  }
  write_file(path, out.str());
}

std::vector<SummaryRow> report_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
  std::vector<std::string> ids;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("steps_", 0) == 0 && entry.path().extension() == ".csv") {
      ids.push_back(name.substr(6, name.size() - 6 - 4));
    }
  }
  if (ids.empty()) throw Error("no steps_*.csv logs in '" + dir.string() + "'");

  std::vector<CellResult> cells;
  for (const auto& id : ids) {
    const auto first = id.find('_');
    const auto last = id.rfind('_');
    if (first == std::string::npos || first == last) throw Error("cannot parse run id '" + id + "'");
    CellResult cell;
    cell.dataset = id.substr(0, first);
    cell.config = id.substr(first + 1, last - first - 1);
    cell.seed = std::stoull(id.substr(last + 1));
    try {
      const auto steps = read_table(dir / ("steps_" + id + ".csv"), 7);
      const auto weights = read_table(dir / ("weights_" + id + ".csv"), 6);
      if (steps.empty()) throw Error("empty step log");
      std::size_t hits = 0;
      for (const auto& r : steps) hits += r[1] == r[2] ? 1 : 0;
      cell.accuracy = static_cast<double>(hits) / static_cast<double>(steps.size());

      // Epoch-end weight rows carry every model's cumulative loss for the epoch.
      std::map<std::size_t, std::pair<std::size_t, std::vector<double>>> ends;
      for (const auto& r : weights) {
        if (r[5] != "1") continue;
        auto& [length, losses] = ends[parse_size(r[0])];
        length = parse_size(r[1]);
        losses.push_back(parse_real(r[4]));
      }
      std::vector<std::vector<double>> model_losses;
      std::vector<double> epoch_losses;
      std::vector<std::size_t> lengths;
      std::size_t row = 0;
      for (auto& [epoch, entry] : ends) {
        double sum = 0.0;
        for (std::size_t i = 0; i < entry.first; ++i, ++row) {
          if (row >= steps.size()) throw Error("weight log covers more steps than the step log");
          sum += parse_real(steps[row][4]);
        }
        model_losses.push_back(std::move(entry.second));
        epoch_losses.push_back(sum);
        lengths.push_back(entry.first);
      }
      if (row != steps.size()) throw Error("weight log and step log disagree on the run length");
      cell.regret = regret_summary(make_ledger(std::move(model_losses), std::move(epoch_losses), std::move(lengths)));
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cells.push_back(std::move(cell));
  }
  std::sort(cells.begin(), cells.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.dataset, a.config, a.seed) < std::tie(b.dataset, b.config, b.seed);
  });
  auto rows = summarize(cells);
  write_summary(dir / "summary.csv", rows);
  return rows;
}

}  // namespace condor
