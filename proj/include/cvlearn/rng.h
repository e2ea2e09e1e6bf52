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

#ifndef CVLEARN_RNG_H_
#define CVLEARN_RNG_H_

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace cvlearn {

using Engine = std::mt19937_64;

/// Purpose tags mixed into stream seeds so that, e.g., the resampling streams
/// of a run never coincide with its simulation streams.
enum class StreamSalt : std::uint64_t {
  kSimulate = 0x51,
  kPilot = 0x52,
  kResample = 0x53,
  kDeal = 0x54,
  kGamePool = 0x55,
  kDirection = 0x56,
  kTrace = 0x57,
  kGeneric = 0x58,
};

/// The split function: stream seed = splitmix64 chain over
/// (master, salt, stream). Every parallel task derives its engine from its own
/// (master, salt, stream) triple, so results depend only on the task index
/// and never on which thread runs it.
std::uint64_t split_seed(std::uint64_t master, StreamSalt salt,
                         std::uint64_t stream);

Engine make_stream(std::uint64_t master, StreamSalt salt,
                   std::uint64_t stream = 0);

/// A seed from OS entropy, for runs where the user supplied none.
std::uint64_t entropy_seed();

inline double standard_normal(Engine& rng) {
  return boost::random::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform01(Engine& rng) {
  return boost::random::uniform_01<double>()(rng);
}

inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n) {
  return boost::random::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

}  // namespace cvlearn

#endif  // CVLEARN_RNG_H_
