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

#include "condor/streams.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

namespace condor {

namespace {

constexpr std::uint64_t kTrainKey = 0x747261696eULL;    // "train"
constexpr std::uint64_t kHoldoutKey = 0x686f6c64ULL;    // "hold"

void require_family(const StreamSpec& spec, Family family) {
  if (spec.family != family) {
    throw InvalidArgument("stream '" + spec.name + "' is " + to_string(spec.family) + ", expected " +
                          to_string(family));
  }
}

void check_index(const StreamSpec& spec, std::size_t t) {
  if (spec.concept_schedule.empty()) throw InvalidArgument("stream '" + spec.name + "' has an empty schedule");
  if (t >= spec.total_length) {
    throw InvalidArgument("index " + std::to_string(t) + " out of range for stream '" + spec.name +
                          "' of length " + std::to_string(spec.total_length));
  }
}

Label maybe_flip(Label y, double noise_rate, SplitMix64& rng) {
  double u = rng.uniform();
  if (u < noise_rate) return y == Label::Positive ? Label::Negative : Label::Positive;
  return y;
}

Vector draw_features(const StreamSpec& spec, SplitMix64& rng) {
  switch (spec.family) {
    case Family::SEA: {
      Vector x(3);
      for (int i = 0; i < 3; ++i) x[i] = rng.uniform(0.0, boxes::kSeaHigh);
      return x;
    }
    case Family::CIR: {
      Vector x(2);
      x[0] = rng.uniform(0.0, boxes::kCirHigh);
      x[1] = rng.uniform(0.0, boxes::kCirHigh);
      return x;
    }
    case Family::SIN: {
      Vector x(2);
      x[0] = rng.uniform(0.0, boxes::kSinX1High);
      x[1] = rng.uniform(boxes::kSinX2Low, boxes::kSinX2High);
      return x;
    }
    case Family::STA: {
      auto size = static_cast<StaggerSize>(rng.below(3));
      auto color = static_cast<StaggerColor>(rng.below(3));
      auto shape = static_cast<StaggerShape>(rng.below(3));
      return sta_encode(size, color, shape);
    }
    case Family::CSV:
      break;
  }
  throw InvalidArgument("stream '" + spec.name + "' is not synthetic");
}

LabeledInstance draw_instance(const StreamSpec& spec, std::size_t concept_index, SplitMix64& rng) {
  LabeledInstance item;
  item.features = draw_features(spec, rng);
  item.label = maybe_flip(concept_label(spec, concept_index, item.features), spec.noise_rate, rng);
  return item;
}

int one_hot_index(const Vector& x, int offset) {
  for (int i = 0; i < 3; ++i) {
    if (x[offset + i] == 1.0) return i;
  }
  throw InvalidArgument("STAGGER feature vector is not one-hot");
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::SEA: return "SEA";
    case Family::CIR: return "CIR";
    case Family::SIN: return "SIN";
    case Family::STA: return "STA";
    case Family::CSV: return "CSV";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  static const std::unordered_map<std::string, Family> kNames = {
      {"SEA", Family::SEA}, {"CIR", Family::CIR}, {"SIN", Family::SIN}, {"STA", Family::STA}, {"CSV", Family::CSV}};
  auto it = kNames.find(name);
  if (it == kNames.end()) throw InvalidArgument("unknown stream family '" + name + "'");
  return it->second;
}

void StreamSpec::validate() const {
  if (family == Family::CSV) return;
  if (drift_period == 0) throw InvalidArgument("drift_period must be positive");
  if (concept_schedule.empty()) throw InvalidArgument("stream '" + name + "' has an empty schedule");
  if (total_length == 0) throw InvalidArgument("total_length must be positive");
  if (total_length != drift_period * concept_schedule.size()) {
    throw InvalidArgument("total_length " + std::to_string(total_length) + " != drift_period * |schedule| = " +
                          std::to_string(drift_period * concept_schedule.size()));
  }
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) throw InvalidArgument("noise_rate must lie in [0, 1)");
  if (family == Family::STA) {
    for (double rule : concept_schedule) {
      if (rule != 1.0 && rule != 2.0 && rule != 3.0) throw InvalidArgument("STAGGER rules are 1, 2 or 3");
    }
  }
}

std::size_t StreamSpec::dimension() const {
  switch (family) {
    case Family::SEA: return 3;
    case Family::CIR: return 2;
    case Family::SIN: return 2;
    case Family::STA: return 9;
    case Family::CSV: return 0;
  }
  return 0;
}

std::vector<double> cyclic_schedule(const std::vector<double>& base, std::size_t periods) {
  std::vector<double> out;
  out.reserve(periods);
  for (std::size_t i = 0; i < periods; ++i) out.push_back(base[i % base.size()]);
  return out;
}

std::vector<double> sine_schedule(std::size_t periods) {
  std::vector<double> out;
  out.reserve(periods);
  for (std::size_t e = 0; e < periods; ++e) out.push_back(static_cast<double>(e) * schedules::kSinDeltaTheta);
  return out;
}

std::vector<double> stagger_schedule(std::size_t periods) { return cyclic_schedule({1, 2, 3}, periods); }

std::vector<std::string> builtin_dataset_names() {
  return {"SEA200A", "SEA200G", "SEA500G", "CIR500G", "SIN500G", "STA500G", "SEA-recur"};
}

std::optional<StreamSpec> builtin_stream(const std::string& name, std::uint64_t seed) {
  StreamSpec spec;
  spec.name = name;
  spec.seed = seed;
  auto fill = [&](Family family, std::size_t period, std::size_t length, std::vector<double> schedule) {
    spec.family = family;
    spec.drift_period = period;
    spec.total_length = length;
    spec.concept_schedule = std::move(schedule);
  };
  if (name == "SEA200A") {
    fill(Family::SEA, 200, 24000, cyclic_schedule(schedules::kSeaA, 120));
  } else if (name == "SEA200G") {
    fill(Family::SEA, 200, 24000, cyclic_schedule(schedules::kSeaG, 120));
  } else if (name == "SEA500G") {
    fill(Family::SEA, 500, 60000, cyclic_schedule(schedules::kSeaG, 120));
  } else if (name == "CIR500G") {
    fill(Family::CIR, 500, 60000, cyclic_schedule(schedules::kCir, 120));
  } else if (name == "SIN500G") {
    fill(Family::SIN, 500, 60000, sine_schedule(120));
  } else if (name == "STA500G") {
    fill(Family::STA, 500, 60000, stagger_schedule(120));
  } else if (name == "SEA-recur") {
    fill(Family::SEA, 100, 800, schedules::kSeaRecur);
  } else {
    return std::nullopt;
  }
  return spec;
}

Label sea_label(const Vector& x, double b) {
  return x[0] + x[1] <= b ? Label::Positive : Label::Negative;
}

Label cir_label(const Vector& x, double r, CirBoundary boundary) {
  double lhs = boundary == CirBoundary::Printed ? x[0] + x[1] * x[1] : x[0] * x[0] + x[1] * x[1];
  return lhs <= r ? Label::Positive : Label::Negative;
}

Label sin_label(const Vector& x, double theta) {
  return std::sin(x[0] + theta) <= x[1] ? Label::Positive : Label::Negative;
}

Label sta_label(StaggerSize size, StaggerColor color, StaggerShape shape, int rule) {
  bool positive = false;
  switch (rule) {
    case 1: positive = size == StaggerSize::Small && color == StaggerColor::Red; break;
    case 2: positive = color == StaggerColor::Green || shape == StaggerShape::Circle; break;
    case 3: positive = size == StaggerSize::Medium || size == StaggerSize::Large; break;
    default: throw InvalidArgument("STAGGER rule must be 1, 2 or 3");
  }
  return positive ? Label::Positive : Label::Negative;
}

Vector sta_encode(StaggerSize size, StaggerColor color, StaggerShape shape) {
  Vector x = Vector::Zero(9);
  x[static_cast<int>(size)] = 1.0;
  x[3 + static_cast<int>(color)] = 1.0;
  x[6 + static_cast<int>(shape)] = 1.0;
  return x;
}

Label concept_label(const StreamSpec& spec, std::size_t concept_index, const Vector& x) {
  if (concept_index >= spec.concept_schedule.size()) throw InvalidArgument("concept index out of range");
  double param = spec.concept_schedule[concept_index];
  switch (spec.family) {
    case Family::SEA: return sea_label(x, param);
    case Family::CIR: return cir_label(x, param, spec.cir_boundary);
    case Family::SIN: return sin_label(x, param);
    case Family::STA:
      return sta_label(static_cast<StaggerSize>(one_hot_index(x, 0)), static_cast<StaggerColor>(one_hot_index(x, 3)),
                       static_cast<StaggerShape>(one_hot_index(x, 6)), static_cast<int>(param));
    case Family::CSV: break;
  }
  throw InvalidArgument("stream '" + spec.name + "' is not synthetic");
}

LabeledInstance generate_sea(const StreamSpec& spec, std::size_t t) {
  require_family(spec, Family::SEA);
  return generate(spec, t);
}

LabeledInstance generate_cir(const StreamSpec& spec, std::size_t t) {
  require_family(spec, Family::CIR);
  return generate(spec, t);
}

LabeledInstance generate_sin(const StreamSpec& spec, std::size_t t) {
  require_family(spec, Family::SIN);
  return generate(spec, t);
}

LabeledInstance generate_sta(const StreamSpec& spec, std::size_t t) {
  require_family(spec, Family::STA);
  return generate(spec, t);
}

LabeledInstance generate(const StreamSpec& spec, std::size_t t) {
  check_index(spec, t);
  SplitMix64 rng = derive_rng(spec.seed, kTrainKey, t);
  return draw_instance(spec, spec.concept_index(t), rng);
}

LabeledInstance sample_concept(const StreamSpec& spec, std::size_t concept_index, SplitMix64& rng) {
  return draw_instance(spec, concept_index, rng);
}

std::vector<LabeledInstance> holdout_batch(const StreamSpec& spec, std::size_t t, std::size_t checkpoint,
                                           std::size_t size) {
  check_index(spec, t);
  SplitMix64 rng = derive_rng(spec.seed, kHoldoutKey, checkpoint);
  std::vector<LabeledInstance> out;
  out.reserve(size);
  std::size_t concept_index = spec.concept_index(t);
  for (std::size_t i = 0; i < size; ++i) out.push_back(draw_instance(spec, concept_index, rng));
  return out;
}

StreamGenerator::StreamGenerator(StreamSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

LabeledInstance StreamGenerator::next() { return generate(spec_, next_++); }

Stream generate_stream(const StreamSpec& spec) {
  StreamGenerator gen(spec);
  Stream out;
  out.reserve(spec.total_length);
  while (!gen.done()) out.push_back(gen.next());
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::optional<double> parse_real(const std::string& cell) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

Stream read_csv_stream(const std::filesystem::path& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CSV file '" + path.string() + "'");
  return read_csv_stream(in, label_column);
}

Stream read_csv_stream(std::istream& in, const std::string& label_column) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV input is missing a header row", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_row(line);
  for (auto& h : header) h = trim(h);
  auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) throw ParseError("CSV header has no '" + label_column + "' column", 1);
  const std::size_t label_pos = static_cast<std::size_t>(label_it - header.begin());
  const std::size_t width = header.size();

  std::vector<Vector> features;
  std::vector<std::string> raw_labels;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_row(line);
    if (cells.size() != width) {
      throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(width) + " cells, found " +
                           std::to_string(cells.size()),
                       row);
    }
    Vector x(static_cast<Eigen::Index>(width - 1));
    Eigen::Index k = 0;
    for (std::size_t c = 0; c < width; ++c) {
      std::string cell = trim(cells[c]);
      if (c == label_pos) {
        raw_labels.push_back(cell);
        continue;
      }
      auto value = parse_real(cell);
      if (!value) {
        throw ParseError("row " + std::to_string(row) + ", column '" + header[c] + "': non-numeric feature '" + cell +
                             "'",
                         row);
      }
      x[k++] = *value;
    }
    features.push_back(std::move(x));
  }

  // Labels already in {-1, +1} are kept; otherwise the first value seen maps to +1.
  bool signed_alphabet = true;
  for (const auto& s : raw_labels) {
    auto v = parse_real(s);
    if (!v || (*v != 1.0 && *v != -1.0)) {
      signed_alphabet = false;
      break;
    }
  }
  std::vector<std::string> seen;
  Stream out;
  out.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    Label y;
    if (signed_alphabet) {
      y = *parse_real(raw_labels[i]) > 0 ? Label::Positive : Label::Negative;
    } else {
      auto it = std::find(seen.begin(), seen.end(), raw_labels[i]);
      if (it == seen.end()) {
        if (seen.size() == 2) {
          throw ParseError("row " + std::to_string(i + 2) + ": more than two distinct labels (multi-class input)", i + 2);
        }
        seen.push_back(raw_labels[i]);
        it = seen.end() - 1;
      }
      y = it == seen.begin() ? Label::Positive : Label::Negative;
    }
    out.push_back({std::move(features[i]), y});
  }
  return out;
}

void write_csv_stream(const std::filesystem::path& path, const Stream& stream, int precision) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write CSV file '" + path.string() + "'");
  write_csv_stream(out, stream, precision);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void write_csv_stream(std::ostream& out, const Stream& stream, int precision) {
  const Eigen::Index d = stream.empty() ? 0 : stream.front().features.size();
  for (Eigen::Index j = 0; j < d; ++j) out << 'f' << j << ',';
  out << "label\n";
  out << std::setprecision(precision);
  for (const auto& item : stream) {
    if (item.features.size() != d) throw DimensionMismatch("stream dimension changes mid-stream");
    for (Eigen::Index j = 0; j < d; ++j) out << item.features[j] << ',';
    out << to_int(item.label) << '\n';
  }
}

}  // namespace condor
