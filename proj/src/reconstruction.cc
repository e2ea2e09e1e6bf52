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

#include "cvlearn/reconstruction.h"

#include <cmath>

#include "cvlearn/bounds.h"
#include "cvlearn/error.h"
#include "cvlearn/parallel.h"
#include "cvlearn/resample.h"

namespace cvlearn {

void ReconSpec::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(b_max >= 0.0 && std::isfinite(b_max), "b_max must be >= 0");
  require(grid_step > 0.0, "grid_step must be positive");
  schedule.validate();
}

std::vector<double> ReconSpec::grid() const {
  const auto steps = static_cast<long>(std::floor(b_max / grid_step + 1e-9));
  std::vector<double> g;
  g.reserve(steps + 1);
  for (long k = 0; k <= steps; ++k) g.push_back(grid_step * static_cast<double>(k));
  return g;
}

bool eps_close_check(std::span<const Complex> curve,
                     std::span<const Complex> truth, double epsilon) {
  require(curve.size() == truth.size(),
          "curve and truth must share the same grid");
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (!(std::abs(curve[k] - truth[k]) < epsilon)) return false;
  }
  return true;
}

bool eps_close_check(std::span<const SlicePoint> curve,
                     std::span<const Complex> truth, double epsilon) {
  std::vector<Complex> values;
  values.reserve(curve.size());
  for (const auto& p : curve) values.push_back(p.value);
  return eps_close_check(std::span<const Complex>(values), truth, epsilon);
}

std::vector<Complex> truth_on_slice(const ProcessSpec& process,
                                    const ComplexVec& direction,
                                    std::span<const double> grid) {
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (double b : grid) out.push_back(char_fn(process, direction.scaled(b)));
  return out;
}

SlicePool::SlicePool(std::vector<double> projections, double dual_norm_sq,
                     double r_eff)
    : w_(std::move(projections)), dual_norm_sq_(dual_norm_sq), r_eff_(r_eff) {
  require(!w_.empty(), "slice pool must be non-empty");
  require(dual_norm_sq_ > 0.0, "slice direction must be nonzero");
}

SlicePool SlicePool::from_records(std::span<const BellRecord> records,
                                  const ComplexVec& direction, double r_eff,
                                  const Affine2& affine) {
  const ComplexVec corrected = correct_dual_point(direction, affine);
  return SlicePool(project(records, corrected), corrected.norm_sq(), r_eff);
}

std::vector<Complex> SlicePool::resample_slice(const SliceEvaluator& eval,
                                               std::size_t draws,
                                               Engine& rng) const {
  return eval.evaluate_with([&](auto&& consume) {
    for_each_resampled(w_.size(), draws, rng,
                       [&](std::size_t i) { consume(w_[i]); });
  });
}

double slice_success_fraction(const SlicePool& pool, const SliceEvaluator& eval,
                              std::span<const Complex> truth, double epsilon,
                              std::size_t draws, int repeats,
                              std::uint64_t seed, std::uint64_t stream_base) {
  std::vector<char> ok(repeats, 0);
  parallel_for(static_cast<std::size_t>(repeats), [&](std::size_t k) {
    Engine rng = make_stream(seed, StreamSalt::kResample, stream_base + k);
    ok[k] = eps_close_check(std::span<const Complex>(pool.resample_slice(eval, draws, rng)),
                            truth, epsilon);
  });
  int hits = 0;
  for (char c : ok) hits += c;
  return static_cast<double>(hits) / static_cast<double>(repeats);
}

ComplexityEstimate sample_complexity_recon(const SlicePool& pool,
                                           const ReconSpec& spec,
                                           std::span<const Complex> truth,
                                           std::uint64_t seed) {
  spec.validate();
  const std::vector<double> grid = spec.grid();
  require(truth.size() == grid.size(), "truth must be evaluated on spec.grid()");
  const SliceEvaluator eval(grid, pool.dual_norm_sq(), pool.r_eff());
  const double radius_sq = spec.b_max * spec.b_max * pool.dual_norm_sq();
  const double initial =
      hoeffding_upper(pool.r_eff(), radius_sq, spec.epsilon, spec.delta).value;
  const int k = spec.schedule.repeats;
  return run_adaptive_schedule(
      initial, 1.0 - spec.delta, spec.schedule, pool.size(),
      [&](int round, std::size_t draws) {
        return slice_success_fraction(pool, eval, truth, spec.epsilon, draws, k,
                                      seed,
                                      static_cast<std::uint64_t>(round) * k);
      });
}

ComplexVec direction_with_overlap(const ComplexVec& base, double overlap,
                                  const ComplexVec& g) {
  require(overlap >= 0.0 && overlap <= 1.0, "overlap must lie in [0, 1]");
  require(base.size() == g.size(), "direction dimension mismatch");
  const double base_norm = base.norm();
  require(base_norm > 0.0, "base direction must be nonzero");
  if (overlap == 0.0) return g.scaled(base_norm / g.norm());
  const ComplexVec unit = base.scaled(1.0 / base_norm);
  const ComplexVec orth = g - unit.scaled(inner(unit, g));
  const double orth_norm = orth.norm();
  require(orth_norm > 0.0, "random vector is parallel to the base direction");
  const ComplexVec mixed =
      unit.scaled(overlap) +
      orth.scaled(std::sqrt(std::max(0.0, 1.0 - overlap * overlap)) / orth_norm);
  return mixed.scaled(base_norm);
}

std::vector<SweepPoint> direction_sweep(std::span<const BellRecord> records,
                                        const ComplexVec& base,
                                        std::span<const double> overlaps,
                                        std::size_t N, const ReconSpec& spec,
                                        const ProcessSpec& truth, double r_eff,
                                        std::uint64_t seed,
                                        int directions_per_overlap,
                                        const Affine2& affine) {
  spec.validate();
  require(directions_per_overlap >= 1, "need at least one direction per overlap");
  require(N >= 1, "resample size must be positive");
  const std::vector<double> grid = spec.grid();
  const int k = spec.schedule.repeats;

  std::vector<ComplexVec> randoms;
  for (int j = 0; j < directions_per_overlap; ++j) {
    Engine rng = make_stream(seed, StreamSalt::kDirection, j);
    randoms.push_back(draw_gamma(base.size(), 1.0, rng));
  }

  std::vector<SweepPoint> out;
  for (double overlap : overlaps) {
    double successes = 0.0;
    for (int j = 0; j < directions_per_overlap; ++j) {
      const ComplexVec d = direction_with_overlap(base, overlap, randoms[j]);
      const SlicePool pool = SlicePool::from_records(records, d, r_eff, affine);
      const SliceEvaluator eval(grid, pool.dual_norm_sq(), r_eff);
      const std::vector<Complex> t = truth_on_slice(truth, d, grid);
      successes += k * slice_success_fraction(pool, eval, t, spec.epsilon, N, k,
                                              seed, static_cast<std::uint64_t>(j) * k);
    }
    SweepPoint p;
    p.overlap = overlap;
    p.trials = static_cast<std::size_t>(directions_per_overlap) * k;
    p.success = successes / static_cast<double>(p.trials);
    p.stderr_ = std::sqrt(p.success * (1.0 - p.success) / static_cast<double>(p.trials));
    out.push_back(p);
  }
  return out;
}

}  // namespace cvlearn
