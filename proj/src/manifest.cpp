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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace condor {

namespace {

struct Value {
  std::string text;
  std::size_t line = 0;
};

using Section = std::map<std::string, Value>;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(const Value& v, const std::string& key, const std::string& what) {
  throw ParseError("line " + std::to_string(v.line) + ": '" + key + "' " + what, v.line);
}

double to_real(const Value& v, const std::string& key) {
  double out = 0.0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e || !std::isfinite(out)) fail(v, key, "expects a number, got '" + v.text + "'");
  return out;
}

std::int64_t to_integer(const Value& v, const std::string& key) {
  std::int64_t out = 0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e) fail(v, key, "expects an integer, got '" + v.text + "'");
  return out;
}

std::size_t to_positive(const Value& v, const std::string& key) {
  auto n = to_integer(v, key);
  if (n < 1) fail(v, key, "is out of range: must be a positive integer");
  return static_cast<std::size_t>(n);
}

bool to_bool(const Value& v, const std::string& key) {
  std::string s = v.text;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  fail(v, key, "expects true or false, got '" + v.text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(),
                     [](unsigned char c) { return std::isalnum(c) || c == '-' || c == '.'; });
}

void reject_unknown(const Section& section, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : section) {
    if (!allowed.count(key)) {
      throw ParseError("line " + std::to_string(value.line) + ": unknown key '" + key + "' in " + where, value.line);
    }
  }
}

const Value* find(const Section& s, const std::string& key) {
  auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

CondorConfig build_config(const Section& s, const std::string& name) {
  static const std::set<std::string> kKeys = {"mu",   "eta",      "p",         "K",      "delta",    "adwin_buckets",
                                              "loss", "step_size", "detector", "reuse", "init_size"};
  reject_unknown(s, kKeys, "[config." + name + "]");
  CondorConfig c;
  if (auto v = find(s, "mu")) {
    c.mu = to_real(*v, "mu");
    if (!(c.mu > 0.0)) fail(*v, "mu", "is out of range: must be > 0");
  }
  if (auto v = find(s, "eta")) {
    c.eta = to_real(*v, "eta");
    if (!(c.eta >= 0.0)) fail(*v, "eta", "is out of range: must be >= 0");
  }
  if (auto v = find(s, "p")) c.epoch_cap = to_positive(*v, "p");
  if (auto v = find(s, "K")) c.capacity = to_positive(*v, "K");
  if (auto v = find(s, "delta")) {
    c.detector_delta = to_real(*v, "delta");
    if (!(c.detector_delta > 0.0 && c.detector_delta < 1.0)) fail(*v, "delta", "is out of range: must lie in (0, 1)");
  }
  if (auto v = find(s, "adwin_buckets")) {
    auto n = to_integer(*v, "adwin_buckets");
    if (n < 2) fail(*v, "adwin_buckets", "is out of range: must be >= 2");
    c.detector_buckets = static_cast<int>(n);
  }
  if (auto v = find(s, "loss")) {
    try {
      c.loss = loss_from_string(v->text);
    } catch (const InvalidArgument& e) {
      fail(*v, "loss", e.what());
    }
  }
  if (auto v = find(s, "step_size")) {
    try {
      c.step_size = step_rule_from_string(v->text);
    } catch (const InvalidArgument& e) {
      fail(*v, "step_size", e.what());
    }
  }
  if (auto v = find(s, "detector")) {
    if (v->text == "adwin") {
      c.use_detector = true;
    } else if (v->text == "none") {
      c.use_detector = false;
    } else {
      fail(*v, "detector", "must be adwin or none");
    }
  }
  if (auto v = find(s, "reuse")) c.reuse = to_bool(*v, "reuse");
  if (auto v = find(s, "init_size")) c.init_size = to_positive(*v, "init_size");
  return c;
}

std::vector<double> named_or_listed_schedule(const Value& v, bool& explicit_list) {
  explicit_list = false;
  if (v.text == "A") return schedules::kSeaA;
  if (v.text == "G") return schedules::kSeaG;
  if (v.text == "recur") return schedules::kSeaRecur;
  explicit_list = true;
  std::vector<double> out;
  for (const auto& item : split_list(v.text)) out.push_back(to_real({item, v.line}, "schedule"));
  if (out.empty()) fail(v, "schedule", "is empty");
  return out;
}

DatasetEntry build_dataset(const Section& s, const std::string& name, const std::filesystem::path& base_dir) {
  static const std::set<std::string> kKeys = {"family", "schedule",     "period", "length",       "noise",
                                              "p",      "cir_boundary", "path",   "label_column", "holdout_size"};
  const std::string where = "[dataset." + name + "]";
  reject_unknown(s, kKeys, where);

  DatasetEntry entry;
  entry.name = name;
  const Value* family_value = find(s, "family");
  std::optional<StreamSpec> base = family_value ? std::nullopt : builtin_stream(name);
  Family family;
  if (family_value) {
    try {
      family = family_from_string(family_value->text);
    } catch (const InvalidArgument& e) {
      fail(*family_value, "family", e.what());
    }
  } else if (base) {
    family = base->family;
  } else {
    std::size_t line = s.empty() ? 0 : s.begin()->second.line;
    throw ParseError(where + " is not a built-in dataset and has no 'family'", line);
  }

  if (auto v = find(s, "p")) entry.epoch_cap = to_positive(*v, "p");
  if (auto v = find(s, "holdout_size")) entry.holdout_size = to_positive(*v, "holdout_size");

  if (family == Family::CSV) {
    for (const char* key : {"schedule", "period", "length", "noise", "cir_boundary"}) {
      if (auto v = find(s, key)) fail(*v, key, "does not apply to CSV datasets");
    }
    const Value* path = find(s, "path");
    if (!path) throw ParseError(where + " needs a 'path'", family_value ? family_value->line : 0);
    entry.csv_path = std::filesystem::path(path->text);
    if (entry.csv_path.is_relative() && !base_dir.empty()) entry.csv_path = base_dir / entry.csv_path;
    if (auto v = find(s, "label_column")) entry.label_column = v->text;
    return entry;
  }
  for (const char* key : {"path", "label_column"}) {
    if (auto v = find(s, key)) fail(*v, key, "only applies to CSV datasets");
  }

  StreamSpec spec = base ? *base : StreamSpec{};
  spec.name = name;
  spec.family = family;
  if (!base) spec.drift_period = 500;
  if (auto v = find(s, "period")) spec.drift_period = to_positive(*v, "period");

  bool explicit_list = false;
  std::vector<double> pattern;
  if (auto v = find(s, "schedule")) {
    if (family == Family::SIN) fail(*v, "schedule", "is fixed for SIN streams (theta advances by pi/60 per period)");
    pattern = named_or_listed_schedule(*v, explicit_list);
  }
  std::size_t periods = 0;
  if (auto v = find(s, "length")) {
    std::size_t length = to_positive(*v, "length");
    if (length % spec.drift_period != 0) fail(*v, "length", "is out of range: must be a multiple of the period");
    periods = length / spec.drift_period;
  } else if (explicit_list) {
    periods = pattern.size();
  } else if (base) {
    periods = base->concept_schedule.size();
  } else {
    periods = 120;
  }

  if (!pattern.empty()) {
    spec.concept_schedule = cyclic_schedule(pattern, periods);
  } else if (base && periods == base->concept_schedule.size()) {
    spec.concept_schedule = base->concept_schedule;
  } else {
    switch (family) {
      case Family::SEA: spec.concept_schedule = cyclic_schedule(schedules::kSeaG, periods); break;
      case Family::CIR: spec.concept_schedule = cyclic_schedule(schedules::kCir, periods); break;
      case Family::SIN: spec.concept_schedule = sine_schedule(periods); break;
      case Family::STA: spec.concept_schedule = stagger_schedule(periods); break;
      case Family::CSV: break;
    }
  }
  spec.total_length = periods * spec.drift_period;

  if (auto v = find(s, "noise")) {
    spec.noise_rate = to_real(*v, "noise");
    if (!(spec.noise_rate >= 0.0 && spec.noise_rate < 1.0)) fail(*v, "noise", "is out of range: must lie in [0, 1)");
  }
  if (auto v = find(s, "cir_boundary")) {
    if (family != Family::CIR) fail(*v, "cir_boundary", "only applies to CIR streams");
    if (v->text == "printed") {
      spec.cir_boundary = CirBoundary::Printed;
    } else if (v->text == "circle") {
      spec.cir_boundary = CirBoundary::Circle;
    } else {
      fail(*v, "cir_boundary", "must be printed or circle");
    }
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(where + ": " + e.what(), s.empty() ? 0 : s.begin()->second.line);
  }
  entry.synthetic = std::move(spec);
  return entry;
}

}  // namespace

void RunManifest::validate() const {
  if (datasets.empty()) throw InvalidArgument("manifest has no datasets");
  if (configs.empty()) throw InvalidArgument("manifest has no configs");
  if (seeds.empty()) throw InvalidArgument("manifest has no seeds");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  for (const auto& c : configs) c.config.validate();
}

NamedConfig no_reuse_ablation(const CondorConfig& base) {
  NamedConfig out{"no-reuse", base};
  out.config.reuse = false;
  return out;
}

NamedConfig window_only_ablation(const CondorConfig& base) {
  NamedConfig out{"window-only", base};
  out.config.reuse = false;
  out.config.capacity = 1;
  return out;
}

std::optional<DatasetEntry> builtin_dataset(const std::string& name) {
  auto spec = builtin_stream(name);
  if (!spec) return std::nullopt;
  DatasetEntry entry;
  entry.name = name;
  entry.synthetic = std::move(spec);
  return entry;
}

RunManifest parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.parent_path());
}

RunManifest parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  Section global;
  std::vector<std::pair<std::string, Section>> dataset_sections;
  std::vector<std::pair<std::string, Section>> config_sections;
  Section* current = &global;
  std::set<std::string> seen_sections;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("line " + std::to_string(line_no) + ": malformed section header", line_no);
      std::string header = trim(std::string_view(line).substr(1, line.size() - 2));
      auto dot = header.find('.');
      std::string kind = dot == std::string::npos ? header : header.substr(0, dot);
      std::string name = dot == std::string::npos ? "" : header.substr(dot + 1);
      if ((kind != "dataset" && kind != "config") || !valid_name(name)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected [dataset.NAME] or [config.NAME] with NAME made of "
                         "letters, digits, '-' or '.'",
                         line_no);
      }
      if (!seen_sections.insert(header).second) {
        throw ParseError("line " + std::to_string(line_no) + ": duplicate section [" + header + "]", line_no);
      }
      auto& list = kind == "dataset" ? dataset_sections : config_sections;
      list.emplace_back(name, Section{});
      current = &list.back().second;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": missing key", line_no);
    if (current->count(key)) throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'", line_no);
    (*current)[key] = {value, line_no};
  }

  RunManifest m;
  reject_unknown(global, {"trials", "seeds", "output_dir", "workers", "ablations"}, "the global section");
  if (auto v = find(global, "trials")) m.trials = to_positive(*v, "trials");
  if (auto v = find(global, "seeds")) {
    for (const auto& item : split_list(v->text)) {
      auto n = to_integer({item, v->line}, "seeds");
      if (n < 0) fail(*v, "seeds", "is out of range: seeds are unsigned");
      m.seeds.push_back(static_cast<std::uint64_t>(n));
    }
    if (m.seeds.empty()) fail(*v, "seeds", "is empty");
    if (find(global, "trials") && m.seeds.size() != m.trials) fail(*v, "seeds", "lists a different count than 'trials'");
    m.trials = m.seeds.size();
  } else {
    for (std::size_t i = 0; i < m.trials; ++i) m.seeds.push_back(i);
  }
  if (auto v = find(global, "output_dir")) m.output_dir = v->text;
  if (auto v = find(global, "workers")) m.workers = to_positive(*v, "workers");
  bool ablations = true;
  if (auto v = find(global, "ablations")) ablations = to_bool(*v, "ablations");

  if (dataset_sections.empty()) {
    for (const char* name : {"SEA200A", "SEA200G", "SEA500G", "CIR500G", "SIN500G", "STA500G"}) {
      m.datasets.push_back(*builtin_dataset(name));
    }
  }
  for (const auto& [name, section] : dataset_sections) m.datasets.push_back(build_dataset(section, name, base_dir));

  if (config_sections.empty()) m.configs.push_back({"condor", CondorConfig{}});
  for (const auto& [name, section] : config_sections) {
    if (name.find('_') != std::string::npos) throw ParseError("config names may not contain '_'", 0);
    m.configs.push_back({name, build_config(section, name)});
  }
  if (ablations) {
    const CondorConfig base = m.configs.front().config;
    for (auto extra : {no_reuse_ablation(base), window_only_ablation(base)}) {
      bool clash = std::any_of(m.configs.begin(), m.configs.end(), [&](const NamedConfig& c) { return c.name == extra.name; });
      if (!clash) m.configs.push_back(std::move(extra));
    }
  }
  m.validate();
  return m;
}

}  // namespace condor
