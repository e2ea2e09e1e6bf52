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

#ifndef CVLEARN_RESAMPLE_H_
#define CVLEARN_RESAMPLE_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>

#include <boost/random/binomial_distribution.hpp>

#include "cvlearn/rng.h"

namespace cvlearn {

/// Pools larger than this are resampled block-wise.
inline constexpr std::size_t kResampleBlock = 1u << 15;

/// Visits the indices of a size-`draws` resample with replacement from
/// [0, pool). Large pools are split into blocks; block counts are drawn
/// jointly multinomial (sequential conditional binomials) and indices are then
/// drawn uniformly inside each block. The visited multiset has exactly the
/// with-replacement distribution while memory access stays block-local.
template <class Visit>
void for_each_resampled(std::size_t pool, std::size_t draws, Engine& rng,
                        Visit&& visit) {
  if (pool == 0 || draws == 0) return;
  if (pool <= kResampleBlock) {
    for (std::size_t i = 0; i < draws; ++i) visit(uniform_index(rng, pool));
    return;
  }
  std::size_t remaining_draws = draws;
  std::size_t remaining_pool = pool;
  for (std::size_t start = 0; start < pool && remaining_draws > 0;
       start += kResampleBlock) {
    const std::size_t size = std::min(kResampleBlock, pool - start);
    std::size_t in_block = remaining_draws;
    if (size < remaining_pool) {
      const double p = static_cast<double>(size) / static_cast<double>(remaining_pool);
      in_block = static_cast<std::size_t>(
          boost::random::binomial_distribution<std::int64_t>(
              static_cast<std::int64_t>(remaining_draws), p)(rng));
    }
    for (std::size_t i = 0; i < in_block; ++i) {
      visit(start + uniform_index(rng, size));
    }
    remaining_draws -= in_block;
    remaining_pool -= size;
  }
}

}  // namespace cvlearn

#endif  // CVLEARN_RESAMPLE_H_
