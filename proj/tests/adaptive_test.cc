// Copyright 2026 The cvlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvlearn/adaptive.h"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "cvlearn/error.h"

namespace cvlearn {
namespace {

TEST(ComplexityUncertainty, HandValue) {
  const std::vector<double> trail = {90, 100, 110};
  // population std sqrt(200/3), correction sqrt(200/100)
  EXPECT_NEAR(complexity_uncertainty(trail, 200.0), std::sqrt(2.0 * 200.0 / 3.0), 1e-12);
  EXPECT_NEAR(complexity_uncertainty(trail, 200.0), 11.547, 1e-3);
}

TEST(ComplexityUncertainty, ConstantTrailIsZero) {
  const std::vector<double> trail(25, 37.0);
  EXPECT_EQ(complexity_uncertainty(trail, 1000.0), 0.0);
}

TEST(ComplexityUncertainty, InfinitePoolIsPlainStd) {
  const std::vector<double> trail = {90, 100, 110};
  EXPECT_NEAR(complexity_uncertainty(trail, std::numeric_limits<double>::infinity()),
              std::sqrt(200.0 / 3.0), 1e-12);
}

TEST(ComplexityUncertainty, UndefinedWhenMeanReachesPool) {
  const std::vector<double> trail = {90, 100, 110};
  EXPECT_THROW(complexity_uncertainty(trail, 100.0), InvalidInput);
  EXPECT_THROW(complexity_uncertainty({}, 100.0), InvalidInput);
}

TEST(Schedule, RecordsLastRoundsAndFollowsUpdateRule) {
  const AdaptiveSchedule s;
  std::vector<int> rounds;
  std::vector<std::size_t> asked;
  const auto e = run_adaptive_schedule(100.0, 0.5, s, 1000000, [&](int r, std::size_t n) {
    rounds.push_back(r);
    asked.push_back(n);
    return r % 2 == 0 ? 1.0 : 0.0;
  });
  ASSERT_EQ(rounds.size(), 35u);
  EXPECT_EQ(rounds.front(), 1);
  EXPECT_EQ(rounds.back(), 35);
  ASSERT_EQ(e.trail.size(), 25u);
  EXPECT_EQ(e.success_trail.size(), 35u);
  EXPECT_EQ(asked[0], 100u);
  // round 1 fails: x e/2; round 2 succeeds: x e/3
  EXPECT_EQ(asked[1], static_cast<std::size_t>(std::round(100.0 * std::numbers::e / 2.0)));
  double n = 100.0;
  std::vector<double> expect;
  for (int r = 1; r <= 35; ++r) {
    n *= r % 2 == 0 ? std::numbers::e / 3.0 : std::numbers::e / 2.0;
    if (r > 10) expect.push_back(n);
  }
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_DOUBLE_EQ(e.trail[i], expect[i]);
  EXPECT_FALSE(e.pool_exhausted);
}

TEST(Schedule, ConvergesToStepThreshold) {
  const auto e = run_adaptive_schedule(1000.0, 2.0 / 3.0, AdaptiveSchedule{}, 1000000,
                                       [](int, std::size_t n) { return n >= 5000 ? 1.0 : 0.0; });
  EXPECT_GT(e.mean_N, 5000.0 * std::numbers::e / 3.0);
  EXPECT_LT(e.mean_N, 5000.0 * std::numbers::e / 2.0);
  for (double x : e.trail) {
    EXPECT_GT(x, 5000.0 * std::numbers::e / 3.0 * 0.999);
    EXPECT_LT(x, 5000.0 * std::numbers::e / 2.0 * 1.001);
  }
  EXPECT_TRUE(std::isfinite(e.delta_N));
}

TEST(Schedule, FlagsPoolExhaustion) {
  const auto e = run_adaptive_schedule(10.0, 0.5, AdaptiveSchedule{}, 100,
                                       [](int, std::size_t) { return 0.0; });
  EXPECT_TRUE(e.pool_exhausted);
  EXPECT_TRUE(std::isnan(e.delta_N));
}

TEST(Schedule, Validation) {
  AdaptiveSchedule s;
  s.keep_last = 30;
  EXPECT_THROW(s.validate(), InvalidInput);
  s = AdaptiveSchedule{};
  s.repeats = 0;
  EXPECT_THROW(s.validate(), InvalidInput);
  auto f = [](int, std::size_t) { return 1.0; };
  EXPECT_THROW(run_adaptive_schedule(0.0, 0.5, AdaptiveSchedule{}, 10, f), InvalidInput);
}

}  // namespace
}  // namespace cvlearn
