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

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <numeric>

using namespace condor;
using condor::testing::bernoulli_values;

namespace {

// Step index (1-based, counted after the change) of the first detection, or 0.
struct ShiftOutcome {
  std::size_t pre_change = 0;
  std::size_t delay = 0;
};

ShiftOutcome run_shift(std::uint64_t seed) {
  const auto values = bernoulli_values(seed, 500, 0.2, 1000, 0.8);
  Adwin det(0.002);
  ShiftOutcome out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!det.insert(values[i]).detected) continue;
    if (i < 500) {
      ++out.pre_change;
    } else if (out.delay == 0) {
      out.delay = i - 499;
    }
  }
  return out;
}

}  // namespace

TEST(Adwin, ConstantStreamNeverFires) {
  Adwin det;
  for (int i = 0; i < 1000; ++i) ASSERT_FALSE(det.insert(0.0).detected);
  EXPECT_EQ(det.width(), 1000u);
}

TEST(Adwin, AlternatingStreamNeverFires) {
  Adwin det;
  for (int i = 0; i < 1000; ++i) ASSERT_FALSE(det.insert(i % 2).detected) << i;
}

TEST(Adwin, RejectsValuesOutsideTheUnitInterval) {
  Adwin det;
  EXPECT_THROW(det.insert(1.5), InvalidArgument);
  EXPECT_THROW(det.insert(-0.1), InvalidArgument);
  EXPECT_THROW(Adwin(0.0), InvalidArgument);
  EXPECT_THROW(Adwin(0.002, 1), InvalidArgument);
}

TEST(Adwin, CutThresholdFormula) {
  // n0 = n1 = 100: m = 50, n = 200.
  EXPECT_NEAR(Adwin::cut_threshold(100, 100, 0.002), std::sqrt(std::log(4.0 * 200 / 0.002) / 100.0), 1e-15);
}

TEST(Adwin, BernoulliShiftDelayIsFrozen) {
  const auto out = run_shift(42);
  EXPECT_EQ(out.pre_change, 0u);
  EXPECT_EQ(out.delay, 14u);
}

TEST(Adwin, DetectsShiftsQuicklyAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto out = run_shift(seed);
    EXPECT_EQ(out.pre_change, 0u) << seed;
    EXPECT_GE(out.delay, 1u) << seed;
    EXPECT_LE(out.delay, 150u) << seed;
  }
}

TEST(Adwin, FewFalseAlarmsOnStationaryStreams) {
  for (double q : {0.2, 0.5}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Adwin det;
      for (double x : bernoulli_values(seed, 10000, q, 0, q)) det.insert(x);
      EXPECT_EQ(det.detections(), 0u) << "q=" << q << " seed=" << seed;
    }
  }
}

TEST(Adwin, BookkeepingMatchesAShadowWindow) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    condor::testing::Gen g(seed);
    Adwin det(0.01, 3);
    std::deque<double> shadow;
    for (int i = 0; i < 10000; ++i) {
      // Piecewise-constant means with occasional jumps, plus real-valued inputs.
      const double level = (i / 1500) % 2 == 0 ? 0.25 : 0.7;
      const double x = std::clamp(level + g.real(-0.25, 0.25), 0.0, 1.0);
      const std::size_t before = det.width();
      const auto sig = det.insert(x);
      shadow.push_back(x);
      if (!sig.detected) {
        ASSERT_EQ(sig.window_length_after, before + 1);
      }
      ASSERT_LE(det.width(), shadow.size());
      while (shadow.size() > det.width()) shadow.pop_front();
      ASSERT_GE(sig.window_length_after, 1u);
      const double sum = std::accumulate(shadow.begin(), shadow.end(), 0.0);
      ASSERT_NEAR(det.total(), sum, 1e-8);

      std::int64_t counted = 0;
      double summed = 0.0;
      for (std::size_t r = 0; r < det.rows().size(); ++r) {
        ASSERT_LE(det.rows()[r].size(), 3u);
        for (const auto& b : det.rows()[r]) {
          ASSERT_EQ(b.count, std::int64_t{1} << r);
          counted += b.count;
          summed += b.sum;
        }
      }
      ASSERT_EQ(static_cast<std::size_t>(counted), det.width());
      ASSERT_NEAR(summed, det.total(), 1e-8);
    }
  }
}

TEST(Adwin, ResetEmptiesTheWindow) {
  Adwin det(0.01);
  for (int i = 0; i < 300; ++i) det.insert(i % 3 == 0);
  det.reset();
  EXPECT_EQ(det.width(), 0u);
  det.reset();
  EXPECT_EQ(det.width(), 0u);
  EXPECT_EQ(det.delta(), 0.01);
  const auto sig = det.insert(0.5);
  EXPECT_EQ(sig.window_length_after, 1u);
  EXPECT_DOUBLE_EQ(sig.mean_after, 0.5);
}

TEST(Adwin, ResetThenReplayMatchesAFreshDetector) {
  const auto values = bernoulli_values(5, 500, 0.2, 1500, 0.8);
  Adwin det;
  std::size_t fired_at = 0;
  for (std::size_t i = 0; i < values.size() && fired_at == 0; ++i) {
    if (det.insert(values[i]).detected) fired_at = i;
  }
  ASSERT_GT(fired_at, 0u);
  det.reset();
  Adwin fresh;
  for (std::size_t i = fired_at + 1; i < values.size(); ++i) {
    const auto a = det.insert(values[i]);
    const auto b = fresh.insert(values[i]);
    ASSERT_EQ(a.detected, b.detected);
    ASSERT_EQ(a.window_length_after, b.window_length_after);
    ASSERT_EQ(a.mean_after, b.mean_after);
  }
}
