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

#include "cvlearn/hypothesis.h"

#include <cmath>
#include <limits>

#include "cvlearn/bounds.h"
#include "cvlearn/error.h"
#include "cvlearn/estimator.h"
#include "cvlearn/parallel.h"
#include "cvlearn/resample.h"

namespace cvlearn {

std::string to_string(ProcessLabel label) {
  return label == ProcessLabel::kThreePeak ? "three_peak" : "gaussian";
}

std::string to_string(Statistic s) { return s == Statistic::kIm ? "im" : "abs"; }

Statistic statistic_from_string(const std::string& s) {
  if (s == "im") return Statistic::kIm;
  if (s == "abs") return Statistic::kAbs;
  throw InvalidInput("unknown statistic '" + s + "' (expected im or abs)");
}

void GameSpec::validate() const {
  require(K >= 1, "K must be positive");
  require(n >= 1, "n must be positive");
  require(kappa > 0.0, "kappa must be positive");
  require(sigma > 0.0, "sigma must be positive");
  require(epsilon0 > 0.0 && epsilon0 <= 0.25, "epsilon0 must lie in (0, 0.25]");
  require(threshold > 0.0 && threshold < 2.0 * epsilon0,
          "threshold must lie in (0, 2 epsilon0)");
  require(N >= 1, "N must be positive");
}

nlohmann::json to_json(const GameSpec& spec) {
  nlohmann::ordered_json j;
  j["K"] = spec.K;
  j["n"] = spec.n;
  j["kappa"] = spec.kappa;
  j["sigma"] = spec.sigma;
  j["epsilon0"] = spec.epsilon0;
  j["threshold"] = spec.threshold;
  j["N"] = spec.N;
  j["balanced"] = spec.balanced;
  j["statistic"] = to_string(spec.statistic);
  return nlohmann::json(j);
}

GameSpec game_spec_from_json(const nlohmann::json& j) {
  require(j.is_object(), "game spec must be a JSON object");
  GameSpec s;
  for (const auto& [key, value] : j.items()) {
    if (key == "K") s.K = value.get<int>();
    else if (key == "n") s.n = value.get<std::size_t>();
    else if (key == "kappa") s.kappa = value.get<double>();
    else if (key == "sigma") s.sigma = value.get<double>();
    else if (key == "epsilon0") s.epsilon0 = value.get<double>();
    else if (key == "threshold") s.threshold = value.get<double>();
    else if (key == "N") s.N = value.get<std::size_t>();
    else if (key == "balanced") s.balanced = value.get<bool>();
    else if (key == "statistic") s.statistic = statistic_from_string(value.get<std::string>());
    else throw InvalidInput("unknown game spec field '" + key + "'");
  }
  s.validate();
  return s;
}

GameInstance::GameInstance(std::vector<ProcessSpec> specs,
                           std::vector<ComplexVec> gammas,
                           std::vector<ProcessLabel> types)
    : specs_(std::move(specs)), gammas_(std::move(gammas)), types_(std::move(types)) {
  require(specs_.size() == gammas_.size() && specs_.size() == types_.size(),
          "game instance lists must have equal length");
}

GameInstance deal(const GameSpec& spec, std::uint64_t seed) {
  spec.validate();
  Engine rng = make_stream(seed, StreamSalt::kDeal);
  std::vector<ProcessLabel> types(spec.K);
  if (spec.balanced) {
    for (int k = 0; k < spec.K; ++k) {
      types[k] = k < spec.K / 2 ? ProcessLabel::kThreePeak : ProcessLabel::kGaussian;
    }
    // Fisher-Yates with our own index draw so the deal is library independent.
    for (int k = spec.K - 1; k > 0; --k) {
      std::swap(types[k], types[uniform_index(rng, k + 1)]);
    }
  } else {
    for (auto& t : types) {
      t = uniform01(rng) < 0.5 ? ProcessLabel::kThreePeak : ProcessLabel::kGaussian;
    }
  }
  std::vector<ProcessSpec> specs;
  std::vector<ComplexVec> gammas;
  for (int k = 0; k < spec.K; ++k) {
    ComplexVec g = draw_gamma(spec.n, spec.sigma_gamma_sq(), rng);
    if (types[k] == ProcessLabel::kThreePeak) {
      specs.push_back(ProcessSpec::three_peak(g, spec.sigma, spec.epsilon0));
    } else {
      specs.push_back(ProcessSpec::gaussian(spec.n, spec.sigma));
    }
    gammas.push_back(std::move(g));
  }
  return GameInstance(std::move(specs), std::move(gammas), std::move(types));
}

double statistic_value(Complex lambda, Statistic statistic) {
  return statistic == Statistic::kIm ? lambda.imag() : std::abs(lambda);
}

ProcessLabel classify_value(Complex lambda, double threshold, Statistic statistic) {
  return statistic_value(lambda, statistic) > threshold ? ProcessLabel::kThreePeak
                                                        : ProcessLabel::kGaussian;
}

ProcessLabel classify(std::span<const BellRecord> records, const ComplexVec& gamma,
                      double r_eff, double threshold, Statistic statistic) {
  return classify_value(estimate_char_fn(records, gamma, r_eff), threshold, statistic);
}

GamePool GamePool::from_records(std::span<const BellRecord> records,
                                const ComplexVec& gamma, double r_eff) {
  GamePool p;
  p.w = project(records, gamma);
  require(!p.w.empty(), "game pool needs at least one record");
  p.prefactor = std::exp(noise_factor(r_eff) * gamma.norm_sq());
  return p;
}

Complex GamePool::estimate() const {
  Complex s;
  for (double x : w) s += std::polar(1.0, 2.0 * x);
  return s * (prefactor / static_cast<double>(w.size()));
}

Complex GamePool::resample_estimate(std::size_t draws, Engine& rng) const {
  require(draws >= 1, "resample size must be positive");
  double re = 0.0, im = 0.0;
  for_each_resampled(w.size(), draws, rng, [&](std::size_t i) {
    re += std::cos(2.0 * w[i]);
    im += std::sin(2.0 * w[i]);
  });
  return Complex(re, im) * (prefactor / static_cast<double>(draws));
}

std::vector<GamePool> simulate_game_pools(const GameInstance& game, double r_eff,
                                          const DriftModel& drift,
                                          std::size_t pool_size,
                                          std::uint64_t seed) {
  require(pool_size >= 1, "pool size must be positive");
  std::vector<GamePool> pools(game.size());
  for (int k = 0; k < game.size(); ++k) {
    const ComplexVec& g = game.gamma(k);
    const std::span<const ComplexVec> dirs(&g, 1);
    auto proj = simulate_projections(game.process(k), r_eff, drift, pool_size,
                                     split_seed(seed, StreamSalt::kGamePool, k), dirs);
    pools[k].w = std::move(proj[0]);
    pools[k].prefactor = std::exp(noise_factor(r_eff) * g.norm_sq());
  }
  return pools;
}

double clt_success(double mean, double std, double threshold, ProcessLabel truth) {
  const double sign = truth == ProcessLabel::kThreePeak ? 1.0 : -1.0;
  if (std == 0.0) {
    if (mean == threshold) return 0.5;
    return sign * (mean - threshold) > 0.0 ? 1.0 : 0.0;
  }
  return 0.5 + 0.5 * sign * std::erf((mean - threshold) / (std::sqrt(2.0) * std));
}

namespace {

// statistics[k][r] for R resamples of size N of every process; blind.
std::vector<std::vector<double>> resampled_statistics(
    std::span<const GamePool> pools, std::size_t N, int repeats,
    Statistic statistic, std::uint64_t seed, std::uint64_t stream_base) {
  const std::size_t K = pools.size();
  std::vector<std::vector<double>> stats(K, std::vector<double>(repeats));
  parallel_for(K * repeats, [&](std::size_t job) {
    const std::size_t k = job / repeats, r = job % repeats;
    Engine rng = make_stream(seed, StreamSalt::kResample, stream_base + job);
    stats[k][r] = statistic_value(pools[k].resample_estimate(N, rng), statistic);
  });
  return stats;
}

}  // namespace

GameOutcome success_probability(const GameInstance& game,
                                std::span<const GamePool> pools, std::size_t N,
                                int repeats, const GameSpec& spec,
                                std::uint64_t seed) {
  require(repeats >= 2, "success_probability needs at least two repeats");
  require(static_cast<int>(pools.size()) == game.size(),
          "one pool per process is required");
  const auto stats = resampled_statistics(pools, N, repeats, spec.statistic, seed, 0);

  GameOutcome out;
  out.N = N;
  out.repeats = repeats;
  double sum_p = 0.0, sum_dp_sq = 0.0;
  int correct = 0;
  for (int k = 0; k < game.size(); ++k) {
    ProcessOutcome po;
    double m = 0.0;
    for (double s : stats[k]) m += s;
    m /= repeats;
    double v = 0.0;
    for (double s : stats[k]) v += (s - m) * (s - m);
    po.mean = m;
    po.std = std::sqrt(v / repeats);
    // Scoring: the only place the hidden type is read.
    const ProcessLabel truth = game.reveal(k);
    po.p = clt_success(po.mean, po.std, spec.threshold, truth);
    for (double s : stats[k]) {
      const ProcessLabel guess =
          s > spec.threshold ? ProcessLabel::kThreePeak : ProcessLabel::kGaussian;
      po.correct += guess == truth;
    }
    const double n_max = static_cast<double>(pools[k].size());
    if (static_cast<double>(N) < n_max) {
      po.delta_p = std::sqrt(po.p * (1.0 - po.p) / repeats) *
                   std::sqrt(static_cast<double>(N) / (n_max - static_cast<double>(N)));
    } else {
      po.delta_p = std::numeric_limits<double>::quiet_NaN();
      out.delta_p_defined = false;
    }
    sum_p += po.p;
    sum_dp_sq += po.delta_p * po.delta_p;
    correct += po.correct;
    out.processes.push_back(po);
  }
  out.p_bar = sum_p / game.size();
  out.delta_p = out.delta_p_defined ? std::sqrt(sum_dp_sq) / game.size()
                                    : std::numeric_limits<double>::quiet_NaN();
  out.raw_success = static_cast<double>(correct) / (game.size() * repeats);
  return out;
}

ComplexityEstimate sample_complexity_hypo(const GameInstance& game,
                                          std::span<const GamePool> pools,
                                          const GameSpec& spec, double p_target,
                                          double r_eff, std::uint64_t seed,
                                          const AdaptiveSchedule& schedule,
                                          double initial_radius_sq) {
  spec.validate();
  require(p_target > 0.0 && p_target < 1.0, "P_target must lie in (0, 1)");
  require(static_cast<int>(pools.size()) == game.size(),
          "one pool per process is required");
  std::size_t pool_size = pools.front().size();
  for (const auto& p : pools) pool_size = std::min(pool_size, p.size());
  const double initial =
      hoeffding_upper(r_eff, initial_radius_sq, spec.epsilon0, 1.0 - p_target).value;
  const int R = schedule.repeats;
  const std::uint64_t per_round = static_cast<std::uint64_t>(game.size()) * R;
  return run_adaptive_schedule(
      initial, p_target, schedule, pool_size, [&](int round, std::size_t N) {
        const auto stats = resampled_statistics(pools, N, R, spec.statistic, seed,
                                                round * per_round);
        int correct = 0;
        for (int k = 0; k < game.size(); ++k) {
          const ProcessLabel truth = game.reveal(k);
          for (double s : stats[k]) {
            const ProcessLabel guess = s > spec.threshold ? ProcessLabel::kThreePeak
                                                          : ProcessLabel::kGaussian;
            correct += guess == truth;
          }
        }
        return static_cast<double>(correct) / static_cast<double>(per_round);
      });
}

nlohmann::ordered_json game_transcript(const GameSpec& spec,
                                       const GameInstance& game,
                                       const GameOutcome& outcome, bool blind) {
  nlohmann::ordered_json j;
  j["spec"] = nlohmann::ordered_json::parse(to_json(spec).dump());
  nlohmann::ordered_json gammas = nlohmann::ordered_json::array();
  for (const auto& g : game.gammas()) {
    nlohmann::ordered_json v = nlohmann::ordered_json::array();
    for (const Complex& c : g.components()) v.push_back({c.real(), c.imag()});
    gammas.push_back(v);
  }
  j["gammas"] = gammas;
  nlohmann::ordered_json procs = nlohmann::ordered_json::array();
  for (const auto& p : outcome.processes) {
    nlohmann::ordered_json e;
    e["mean"] = p.mean;
    e["std"] = p.std;
    e["P"] = p.p;
    e["delta_P"] = std::isnan(p.delta_p) ? nlohmann::ordered_json(nullptr)
                                         : nlohmann::ordered_json(p.delta_p);
    e["correct"] = p.correct;
    procs.push_back(e);
  }
  j["processes"] = procs;
  j["P_bar"] = outcome.p_bar;
  j["delta_P"] = outcome.delta_p_defined ? nlohmann::ordered_json(outcome.delta_p)
                                         : nlohmann::ordered_json(nullptr);
  j["raw_success"] = outcome.raw_success;
  j["N"] = outcome.N;
  j["repeats"] = outcome.repeats;
  if (!blind) {
    nlohmann::ordered_json types = nlohmann::ordered_json::array();
    for (int k = 0; k < game.size(); ++k) types.push_back(to_string(game.reveal(k)));
    j["sealed"] = {{"types", types}};
  }
  return j;
}

}  // namespace cvlearn
