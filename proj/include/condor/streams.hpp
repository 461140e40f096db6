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

#include "condor/rng.hpp"
#include "condor/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace condor {

enum class Family { SEA, CIR, SIN, STA, CSV };

/// CIR decision boundary. `Printed` is x1 + x2^2 <= r, `Circle` is x1^2 + x2^2 <= r.
enum class CirBoundary { Printed, Circle };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// Sampling boxes for the synthetic families.
namespace boxes {
inline constexpr double kSeaHigh = 10.0;
inline constexpr double kCirHigh = 10.0;
inline constexpr double kSinX1High = 6.283185307179586;  // 2*pi
inline constexpr double kSinX2Low = -1.0;
inline constexpr double kSinX2High = 1.0;
}  // namespace boxes

/// Named concept schedules.
namespace schedules {
inline const std::vector<double> kSeaA = {10, 7, 3, 7, 10, 13, 16, 13};
inline const std::vector<double> kSeaG = {10, 8, 6, 8, 10, 12, 14, 12};
inline const std::vector<double> kSeaRecur = {10, 10, 20, 20, 20, 20, 10, 10};
inline const std::vector<double> kCir = {3, 2.5, 2, 2.5, 3, 3.5, 4, 3.5};
inline constexpr double kSinDeltaTheta = 3.141592653589793 / 60.0;
}  // namespace schedules

/// Describes one synthetic stream. `concept_schedule` holds one entry per
/// drift period: b for SEA, r for CIR, the absolute angle theta for SIN and
/// the rule number (1..3) for STA.
struct StreamSpec {
  std::string name;
  Family family = Family::SEA;
  std::size_t drift_period = 200;
  std::vector<double> concept_schedule;
  std::size_t total_length = 0;
  std::uint64_t seed = 0;
  double noise_rate = 0.0;
  CirBoundary cir_boundary = CirBoundary::Printed;

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;

  std::size_t concept_index(std::size_t t) const { return t / drift_period; }
  std::size_t dimension() const;
};

/// Repeats `base` cyclically until it has `periods` entries.
std::vector<double> cyclic_schedule(const std::vector<double>& base, std::size_t periods);

/// theta_e = e * pi/60 for e in [0, periods).
std::vector<double> sine_schedule(std::size_t periods);

/// STAGGER rules 1, 2, 3, 1, 2, 3, ...
std::vector<double> stagger_schedule(std::size_t periods);

/// Built-in datasets: SEA200A, SEA200G, SEA500G, CIR500G, SIN500G, STA500G and SEA-recur.
std::vector<std::string> builtin_dataset_names();
std::optional<StreamSpec> builtin_stream(const std::string& name, std::uint64_t seed = 0);

// Noiseless labeling functions.
Label sea_label(const Vector& x, double b);
Label cir_label(const Vector& x, double r, CirBoundary boundary = CirBoundary::Printed);
Label sin_label(const Vector& x, double theta);

enum class StaggerSize { Small, Medium, Large };
enum class StaggerColor { Red, Green, Blue };
enum class StaggerShape { Circle, Square, Triangle };

Label sta_label(StaggerSize size, StaggerColor color, StaggerShape shape, int rule);
/// One-hot layout: [small, medium, large, red, green, blue, circle, square, triangle].
Vector sta_encode(StaggerSize size, StaggerColor color, StaggerShape shape);

/// Noiseless label of `x` under concept `concept_index` of `spec`.
Label concept_label(const StreamSpec& spec, std::size_t concept_index, const Vector& x);

LabeledInstance generate_sea(const StreamSpec& spec, std::size_t t);
LabeledInstance generate_cir(const StreamSpec& spec, std::size_t t);
LabeledInstance generate_sin(const StreamSpec& spec, std::size_t t);
LabeledInstance generate_sta(const StreamSpec& spec, std::size_t t);

/// Dispatches on `spec.family`; item t depends only on (spec, t).
LabeledInstance generate(const StreamSpec& spec, std::size_t t);

/// Draws one item from a given concept using the caller's generator.
LabeledInstance sample_concept(const StreamSpec& spec, std::size_t concept_index, SplitMix64& rng);

/// Fresh test batch from the concept active at `t`; `checkpoint` selects the sub-seed.
std::vector<LabeledInstance> holdout_batch(const StreamSpec& spec, std::size_t t, std::size_t checkpoint,
                                           std::size_t size);

/// Sequential single-consumer view over a synthetic stream.
class StreamGenerator {
 public:
  explicit StreamGenerator(StreamSpec spec);

  bool done() const { return next_ >= spec_.total_length; }
  LabeledInstance next();
  std::size_t position() const { return next_; }
  const StreamSpec& spec() const { return spec_; }

 private:
  StreamSpec spec_;
  std::size_t next_ = 0;
};

Stream generate_stream(const StreamSpec& spec);

// CSV: header row, features f0..f{d-1}, label column, '.' decimal point.
Stream read_csv_stream(const std::filesystem::path& path, const std::string& label_column = "label");
Stream read_csv_stream(std::istream& in, const std::string& label_column = "label");
void write_csv_stream(const std::filesystem::path& path, const Stream& stream, int precision = 6);
void write_csv_stream(std::ostream& out, const Stream& stream, int precision = 6);

}  // namespace condor
