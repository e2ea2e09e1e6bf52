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

#ifndef CVLEARN_HYPOTHESIS_H_
#define CVLEARN_HYPOTHESIS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvlearn/adaptive.h"
#include "cvlearn/measurement.h"
#include "cvlearn/process.h"
#include "json.hpp"

namespace cvlearn {

enum class ProcessLabel { kThreePeak, kGaussian };
enum class Statistic { kIm, kAbs };

std::string to_string(ProcessLabel label);
std::string to_string(Statistic s);
Statistic statistic_from_string(const std::string& s);

struct GameSpec {
  int K = 16;
  std::size_t n = 1;
  double kappa = 0.2;
  double sigma = 0.3;
  double epsilon0 = 0.25;
  double threshold = 0.25;
  std::size_t N = 100000;
  bool balanced = true;
  Statistic statistic = Statistic::kIm;

  void validate() const;
  /// Per-coordinate variance of q(gamma); 2 sigma_gamma^2 = 0.99 kappa.
  double sigma_gamma_sq() const { return 0.99 * kappa / 2.0; }
};

nlohmann::json to_json(const GameSpec& spec);
GameSpec game_spec_from_json(const nlohmann::json& j);

/// A dealt game. Process types are only reachable through reveal(), which
/// the classification path never calls.
class GameInstance {
 public:
  GameInstance(std::vector<ProcessSpec> specs, std::vector<ComplexVec> gammas,
               std::vector<ProcessLabel> types);

  int size() const { return static_cast<int>(specs_.size()); }
  const ProcessSpec& process(int k) const { return specs_.at(k); }
  const ComplexVec& gamma(int k) const { return gammas_.at(k); }
  const std::vector<ComplexVec>& gammas() const { return gammas_; }

  ProcessLabel reveal(int k) const { return types_.at(k); }

 private:
  std::vector<ProcessSpec> specs_;
  std::vector<ComplexVec> gammas_;
  std::vector<ProcessLabel> types_;
};

/// Deals K processes from stream (seed, kDeal). Gaussian processes get a
/// fictional gamma from the same distribution.
GameInstance deal(const GameSpec& spec, std::uint64_t seed);

double statistic_value(Complex lambda, Statistic statistic);

/// three_peak iff statistic(lambda~(gamma)) > threshold.
ProcessLabel classify_value(Complex lambda, double threshold, Statistic statistic);

ProcessLabel classify(std::span<const BellRecord> records, const ComplexVec& gamma,
                      double r_eff, double threshold,
                      Statistic statistic = Statistic::kIm);

/// Bell records of one process reduced to w_i = Im(zeta_i^dagger gamma); the
/// estimator at beta = gamma is e^{e^{-2r}|gamma|^2} mean e^{2 i w_i}.
struct GamePool {
  std::vector<double> w;
  double prefactor = 1.0;

  static GamePool from_records(std::span<const BellRecord> records,
                               const ComplexVec& gamma, double r_eff);
  std::size_t size() const { return w.size(); }
  Complex estimate() const;
  Complex resample_estimate(std::size_t draws, Engine& rng) const;
};

/// Simulates `pool_size` Bell records per process (process k from master
/// seed split_seed(seed, kGamePool, k)) and reduces them to game pools.
std::vector<GamePool> simulate_game_pools(const GameInstance& game,
                                          double r_eff, const DriftModel& drift,
                                          std::size_t pool_size,
                                          std::uint64_t seed);

struct ProcessOutcome {
  double mean = 0.0;     // mean statistic over the R resamples
  double std = 0.0;      // population std
  double p = 0.0;        // CLT success probability
  double delta_p = 0.0;
  int correct = 0;       // raw correct classifications out of R
};

struct GameOutcome {
  std::vector<ProcessOutcome> processes;
  double p_bar = 0.0;
  double delta_p = 0.0;        // NaN when N >= pool size
  bool delta_p_defined = true;
  double raw_success = 0.0;    // fraction of correct classifications
  std::size_t N = 0;
  int repeats = 0;
};

/// Per-process P = 1/2 +- 1/2 erf((mean - threshold) / (sqrt(2) std)), sign +
/// for three-peak truth. A zero std gives a step.
double clt_success(double mean, double std, double threshold, ProcessLabel truth);

/// R resamples of size N per process, classified blind, then scored.
/// Resample r of process k uses stream (seed, kResample, k * R + r).
GameOutcome success_probability(const GameInstance& game,
                                std::span<const GamePool> pools, std::size_t N,
                                int repeats, const GameSpec& spec,
                                std::uint64_t seed);

/// Monte Carlo hypothesis-testing sample complexity. The initial guess is
/// hoeffding_upper(r_eff, initial_radius_sq, epsilon0, 1 - p_target); each
/// round scores K x schedule.repeats classifications by raw success fraction.
ComplexityEstimate sample_complexity_hypo(const GameInstance& game,
                                          std::span<const GamePool> pools,
                                          const GameSpec& spec, double p_target,
                                          double r_eff, std::uint64_t seed,
                                          const AdaptiveSchedule& schedule = {},
                                          double initial_radius_sq = 0.0);

/// Transcript with the hidden types in a trailing "sealed" section, omitted
/// when blind is true.
nlohmann::ordered_json game_transcript(const GameSpec& spec,
                                       const GameInstance& game,
                                       const GameOutcome& outcome, bool blind);

}  // namespace cvlearn

#endif  // CVLEARN_HYPOTHESIS_H_
