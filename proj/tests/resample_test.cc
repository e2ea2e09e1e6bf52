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

#include "cvlearn/resample.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace cvlearn {
namespace {

TEST(Resample, VisitsExactlyDrawsIndicesInRange) {
  for (std::size_t pool : {std::size_t{1}, std::size_t{10}, kResampleBlock + 17, 5 * kResampleBlock}) {
    Engine rng = make_stream(1, StreamSalt::kResample, pool);
    std::size_t visits = 0;
    for_each_resampled(pool, 12345, rng, [&](std::size_t i) {
      ASSERT_LT(i, pool);
      ++visits;
    });
    EXPECT_EQ(visits, 12345u);
  }
}

TEST(Resample, Deterministic) {
  std::vector<std::size_t> a, b;
  Engine r1 = make_stream(5, StreamSalt::kResample), r2 = make_stream(5, StreamSalt::kResample);
  for_each_resampled(3 * kResampleBlock, 1000, r1, [&](std::size_t i) { a.push_back(i); });
  for_each_resampled(3 * kResampleBlock, 1000, r2, [&](std::size_t i) { b.push_back(i); });
  EXPECT_EQ(a, b);
}

// Blocked scheme must still be uniform with replacement: chi-square over
// 64 equal bins of a pool spanning several blocks.
TEST(Resample, UniformAcrossBlocks) {
  const std::size_t pool = 4 * kResampleBlock + 1000;
  const std::size_t draws = 2000000;
  std::vector<double> bins(64, 0.0);
  Engine rng = make_stream(9, StreamSalt::kResample);
  for_each_resampled(pool, draws, rng, [&](std::size_t i) { bins[i * 64 / pool] += 1.0; });
  double chi2 = 0.0;
  for (std::size_t b = 0; b < 64; ++b) {
    const std::size_t lo = (b * pool + 63) / 64, hi = ((b + 1) * pool + 63) / 64;
    const double expect = static_cast<double>(draws) * (hi - lo) / pool;
    chi2 += (bins[b] - expect) * (bins[b] - expect) / expect;
  }
  // 63 degrees of freedom; 99.9th percentile is about 103.4.
  EXPECT_LT(chi2, 103.4);
}

// Multiplicity of a single index follows Binomial(draws, 1/pool).
TEST(Resample, MultiplicityVarianceMatchesWithReplacement) {
  const std::size_t pool = 2 * kResampleBlock;
  const std::size_t draws = pool;
  std::vector<int> counts(pool, 0);
  Engine rng = make_stream(10, StreamSalt::kResample);
  for_each_resampled(pool, draws, rng, [&](std::size_t i) { ++counts[i]; });
  double m = 0, v = 0;
  for (int c : counts) m += c;
  m /= pool;
  for (int c : counts) v += (c - m) * (c - m);
  v /= pool - 1;
  EXPECT_NEAR(m, 1.0, 1e-12);
  EXPECT_NEAR(v, 1.0 - 1.0 / pool, 0.02);
}

}  // namespace
}  // namespace cvlearn
