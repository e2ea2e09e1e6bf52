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

#include "cvlearn/rng.h"

#include <set>

#include <gtest/gtest.h>

namespace cvlearn {
namespace {

TEST(Rng, StreamsAreDeterministic) {
  Engine a = make_stream(42, StreamSalt::kSimulate, 3);
  Engine b = make_stream(42, StreamSalt::kSimulate, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, StreamsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 64; ++s) {
    seen.insert(split_seed(7, StreamSalt::kResample, s));
    seen.insert(split_seed(7, StreamSalt::kSimulate, s));
    seen.insert(split_seed(8, StreamSalt::kResample, s));
  }
  EXPECT_EQ(seen.size(), 64u * 3u);
}

TEST(Rng, UniformIndexStaysInRange) {
  Engine rng = make_stream(1, StreamSalt::kGeneric);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(uniform_index(rng, 7), 7u);
}

TEST(Rng, StandardNormalMoments) {
  Engine rng = make_stream(5, StreamSalt::kGeneric);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = standard_normal(rng);
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

}  // namespace
}  // namespace cvlearn
