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

#include "cvlearn/error.h"

namespace cvlearn {

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_std(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

void AdaptiveSchedule::validate() const {
  require(repeats >= 1, "repeats must be positive");
  require(max_rounds >= 1, "max_rounds must be positive");
  require(keep_last >= 1 && keep_last <= max_rounds - 10,
          "keep_last must lie in [1, max_rounds - 10]");
  require(on_success > 0.0 && on_failure > 0.0,
          "update factors must be positive");
}

nlohmann::json to_json(const ComplexityEstimate& e) {
  nlohmann::ordered_json j;
  j["mean_N"] = e.mean_N;
  j["std_N"] = e.std_N;
  j["delta_N"] = std::isnan(e.delta_N) ? nlohmann::ordered_json(nullptr)
                                       : nlohmann::ordered_json(e.delta_N);
  j["trail"] = e.trail;
  j["success_trail"] = e.success_trail;
  j["pool_size"] = e.pool_size;
  j["pool_exhausted"] = e.pool_exhausted;
  return nlohmann::json(j);
}

ComplexityEstimate run_adaptive_schedule(
    double initial_N, double target, const AdaptiveSchedule& schedule,
    std::size_t pool_size,
    const std::function<double(int, std::size_t)>& success_fraction) {
  schedule.validate();
  require(std::isfinite(initial_N) && initial_N > 0.0,
          "initial N must be positive");
  ComplexityEstimate out;
  out.pool_size = static_cast<double>(pool_size);
  double n = initial_N;
  const int first_recorded = schedule.max_rounds - schedule.keep_last + 1;
  for (int round = 1; round <= schedule.max_rounds; ++round) {
    const auto draws =
        static_cast<std::size_t>(std::max(1.0, std::round(n)));
    if (draws > pool_size) out.pool_exhausted = true;
    const double frac = success_fraction(round, draws);
    out.success_trail.push_back(frac);
    n *= frac >= target ? schedule.on_success : schedule.on_failure;
    if (round >= first_recorded) out.trail.push_back(n);
  }
  out.mean_N = mean_of(out.trail);
  out.std_N = population_std(out.trail, out.mean_N);
  out.delta_N = out.mean_N < out.pool_size
                    ? complexity_uncertainty(out.trail, out.pool_size)
                    : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double complexity_uncertainty(std::span<const double> trail, double n_max) {
  require(!trail.empty(), "trail must be non-empty");
  const double mean = mean_of(trail);
  if (!(mean < n_max)) {
    throw InvalidInput("finite-pool correction undefined: mean N >= pool size");
  }
  const double sd = population_std(trail, mean);
  if (std::isinf(n_max)) return sd;
  return std::sqrt(n_max / (n_max - mean)) * sd;
}

}  // namespace cvlearn
