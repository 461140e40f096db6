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

#include "condor/detector.hpp"

#include "condor/types.hpp"

#include <cmath>
#include <string>

namespace condor {

Adwin::Adwin(double delta, int max_buckets) : delta_(delta), max_buckets_(max_buckets) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("ADWIN delta must lie in (0, 1)");
  if (max_buckets < 2) throw InvalidArgument("ADWIN needs at least 2 buckets per row");
}

double Adwin::cut_threshold(double n0, double n1, double delta) {
  const double n = n0 + n1;
  const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
  return std::sqrt(std::log(4.0 * n / delta) / (2.0 * m));
}

DriftSignal Adwin::insert(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument("ADWIN input " + std::to_string(value) + " is outside [0, 1]");
  }
  if (rows_.empty()) rows_.emplace_back();
  rows_[0].push_front({1, value});
  total_count_ += 1;
  total_sum_ += value;
  compress();

  bool detected = false;
  while (drop_if_cut()) detected = true;
  if (detected) ++detections_;
  return {detected, width(), mean()};
}

void Adwin::reset() {
  rows_.clear();
  total_count_ = 0;
  total_sum_ = 0.0;
}

void Adwin::compress() {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() <= static_cast<std::size_t>(max_buckets_)) break;
    Bucket older = rows_[i].back();
    rows_[i].pop_back();
    Bucket old = rows_[i].back();
    rows_[i].pop_back();
    if (i + 1 == rows_.size()) rows_.emplace_back();
    rows_[i + 1].push_front({older.count + old.count, older.sum + old.sum});
  }
}

bool Adwin::drop_if_cut() {
  if (total_count_ < 2) return false;
  // Walk from the oldest bucket toward the newest; W0 is everything seen so far.
  double n0 = 0.0;
  double s0 = 0.0;
  const double n = static_cast<double>(total_count_);
  for (std::size_t r = rows_.size(); r-- > 0;) {
    const auto& row = rows_[r];
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
      n0 += static_cast<double>(it->count);
      s0 += it->sum;
      const double n1 = n - n0;
      if (n1 < 1.0) return false;
      const double s1 = total_sum_ - s0;
      if (std::abs(s0 / n0 - s1 / n1) >= cut_threshold(n0, n1, delta_)) {
        drop_oldest();
        return true;
      }
    }
  }
  return false;
}

void Adwin::drop_oldest() {
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  if (rows_.empty()) return;
  Bucket b = rows_.back().back();
  rows_.back().pop_back();
  total_count_ -= b.count;
  total_sum_ -= b.sum;
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

}  // namespace condor
