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

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace condor {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Class label; the sign of a linear score is the prediction.
enum class Label : int { Negative = -1, Positive = 1 };

inline int to_int(Label y) { return static_cast<int>(y); }
inline double to_real(Label y) { return static_cast<double>(static_cast<int>(y)); }
inline Label label_from_sign(double score) { return score >= 0.0 ? Label::Positive : Label::Negative; }

struct LabeledInstance {
  Vector features;
  Label label = Label::Positive;
};

using Stream = std::vector<LabeledInstance>;

/// Items collected since the previous model update, in arrival order.
struct EpochBuffer {
  std::vector<LabeledInstance> instances;
  std::size_t epoch_index = 1;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, std::size_t epoch) : Error(what), epoch_(epoch) {}
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  /// 1-based line (or row) number, 0 when not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace condor
