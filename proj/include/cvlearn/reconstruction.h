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

#ifndef CVLEARN_RECONSTRUCTION_H_
#define CVLEARN_RECONSTRUCTION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cvlearn/adaptive.h"
#include "cvlearn/estimator.h"
#include "cvlearn/process.h"

namespace cvlearn {

/// (epsilon, delta)-close reconstruction along a slice b * d, b in
/// [0, b_max] on a grid of step grid_step.
struct ReconSpec {
  double epsilon = 0.24;
  double delta = 1.0 / 3.0;
  double b_max = 0.3;
  double grid_step = 0.01;
  AdaptiveSchedule schedule;

  void validate() const;
  std::vector<double> grid() const;
};

/// True iff max_k |curve_k - truth_k| < epsilon (strict).
bool eps_close_check(std::span<const SlicePoint> curve,
                     std::span<const Complex> truth, double epsilon);
bool eps_close_check(std::span<const Complex> curve,
                     std::span<const Complex> truth, double epsilon);

/// lambda(b d) from the closed form, for every b on the grid.
std::vector<Complex> truth_on_slice(const ProcessSpec& process,
                                    const ComplexVec& direction,
                                    std::span<const double> grid);

/// A record pool reduced to its projections on one (drift-corrected) slice
/// direction. Resamples are drawn with replacement from it.
class SlicePool {
 public:
  /// projections[i] = Im(zeta_i^dagger d') where d' is the direction already
  /// passed through correct_dual_point; dual_norm_sq = |d'|^2.
  SlicePool(std::vector<double> projections, double dual_norm_sq, double r_eff);

  static SlicePool from_records(std::span<const BellRecord> records,
                                const ComplexVec& direction, double r_eff,
                                const Affine2& affine = Affine2::identity());

  std::size_t size() const { return w_.size(); }
  double dual_norm_sq() const { return dual_norm_sq_; }
  double r_eff() const { return r_eff_; }
  std::span<const double> projections() const { return w_; }

  /// Slice estimate from one resample of `draws` records.
  std::vector<Complex> resample_slice(const SliceEvaluator& eval,
                                      std::size_t draws, Engine& rng) const;

 private:
  std::vector<double> w_;
  double dual_norm_sq_;
  double r_eff_;
};

/// Fraction of `repeats` resamples of size `draws` whose slice is
/// epsilon-close to the truth. Resample k uses stream
/// (seed, kResample, stream_base + k).
double slice_success_fraction(const SlicePool& pool, const SliceEvaluator& eval,
                              std::span<const Complex> truth, double epsilon,
                              std::size_t draws, int repeats,
                              std::uint64_t seed, std::uint64_t stream_base);

/// Monte Carlo determination of the (epsilon, delta)-close sample complexity.
/// Starts from the Hoeffding bound at |beta_0|^2 = b_max^2 |d'|^2, runs the
/// adaptive schedule with target 1 - delta and returns the recorded trail.
ComplexityEstimate sample_complexity_recon(const SlicePool& pool,
                                           const ReconSpec& spec,
                                           std::span<const Complex> truth,
                                           std::uint64_t seed);

struct SweepPoint {
  double overlap = 0.0;  // 0 = uniformly random direction
  double success = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
};

/// A direction with Re<d0^|d^> = overlap and |d| = |d0|, built from the
/// random vector g by Gram-Schmidt against d0. overlap == 0 returns g itself
/// (a uniformly random direction) rescaled to |d0|.
ComplexVec direction_with_overlap(const ComplexVec& base, double overlap,
                                  const ComplexVec& g);

/// Success probability of epsilon-closeness along directions with prescribed
/// overlaps with `base`, at fixed resample size N. Each overlap uses
/// `directions_per_overlap` random directions times spec.schedule.repeats
/// resamples; random vectors and resample streams are shared across overlaps.
std::vector<SweepPoint> direction_sweep(std::span<const BellRecord> records,
                                        const ComplexVec& base,
                                        std::span<const double> overlaps,
                                        std::size_t N, const ReconSpec& spec,
                                        const ProcessSpec& truth, double r_eff,
                                        std::uint64_t seed,
                                        int directions_per_overlap = 8,
                                        const Affine2& affine = Affine2::identity());

}  // namespace cvlearn

#endif  // CVLEARN_RECONSTRUCTION_H_
