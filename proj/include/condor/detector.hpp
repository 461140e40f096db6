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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

namespace condor {

struct DriftSignal {
  bool detected = false;
  std::size_t window_length_after = 0;
  double mean_after = 0.0;
};

/// Adaptive-windowing change detector over values in [0, 1].
///
/// The window is stored as exponential histogram rows: row i holds buckets
/// summarizing 2^i consecutive values, newest bucket at the front of each row.
/// When a row grows past `max_buckets` its two oldest buckets are merged into
/// the newest slot of the next row. After each insert every bucket boundary is
/// tested as a cut point and the oldest bucket is dropped while some cut
/// separates sub-windows whose means differ by at least
///
///   eps_cut = sqrt( ln(4 n / delta) / (2 m) ),  m = 1 / (1/n0 + 1/n1).
class Adwin {
 public:
  struct Bucket {
    std::int64_t count = 0;
    double sum = 0.0;
  };

  explicit Adwin(double delta = 0.002, int max_buckets = 5);

  /// Throws InvalidArgument for values outside [0, 1].
  DriftSignal insert(double value);

  /// Empties the window; delta and the bucket limit are kept.
  void reset();

  std::size_t width() const { return static_cast<std::size_t>(total_count_); }
  double total() const { return total_sum_; }
  double mean() const { return total_count_ > 0 ? total_sum_ / static_cast<double>(total_count_) : 0.0; }
  double delta() const { return delta_; }
  int max_buckets() const { return max_buckets_; }
  std::size_t detections() const { return detections_; }

  const std::vector<std::deque<Bucket>>& rows() const { return rows_; }

  /// Cut threshold for sub-window sizes n0, n1 with total window n = n0 + n1.
  static double cut_threshold(double n0, double n1, double delta);

 private:
  void compress();
  bool drop_if_cut();
  void drop_oldest();

  double delta_;
  int max_buckets_;
  std::vector<std::deque<Bucket>> rows_;
  std::int64_t total_count_ = 0;
  double total_sum_ = 0.0;
  std::size_t detections_ = 0;
};

}  // namespace condor
