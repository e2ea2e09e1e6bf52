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

#ifndef CVLEARN_ADAPTIVE_H_
#define CVLEARN_ADAPTIVE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "json.hpp"

namespace cvlearn {

/// Round structure shared by the reconstruction and hypothesis-testing
/// complexity searches. After each round N is multiplied by `on_success`
/// when the measured success fraction reaches the target and by `on_failure`
/// otherwise; rounds after max_rounds - keep_last are recorded.
struct AdaptiveSchedule {
  int repeats = 25;
  int max_rounds = 35;
  int keep_last = 25;
  double on_success = std::numbers::e / 3.0;
  double on_failure = std::numbers::e / 2.0;

  void validate() const;
};

struct ComplexityEstimate {
  double mean_N = 0.0;
  double std_N = 0.0;                // population std of the trail
  std::vector<double> trail;         // recorded N values, oldest first
  std::vector<double> success_trail; // success fraction measured in each round
  double pool_size = 0.0;
  double delta_N = 0.0;              // finite-pool corrected std; NaN if N >= pool
  bool pool_exhausted = false;       // some round asked for N > pool size
};

nlohmann::json to_json(const ComplexityEstimate& e);

/// Runs the adaptive schedule. success_fraction(round, N) must return the
/// fraction of successful repeats measured with resample size N in that
/// round (rounds are 1-based).
ComplexityEstimate run_adaptive_schedule(
    double initial_N, double target, const AdaptiveSchedule& schedule,
    std::size_t pool_size,
    const std::function<double(int round, std::size_t N)>& success_fraction);

/// Delta N = sqrt(N_max / (N_max - mean)) * std(trail), the bootstrapping
/// correction for a finite pool of N_max records.
double complexity_uncertainty(std::span<const double> trail, double n_max);

}  // namespace cvlearn

#endif  // CVLEARN_ADAPTIVE_H_
