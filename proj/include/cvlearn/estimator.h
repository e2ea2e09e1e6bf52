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

#ifndef CVLEARN_ESTIMATOR_H_
#define CVLEARN_ESTIMATOR_H_

#include <cmath>
#include <span>
#include <vector>

#include "cvlearn/complex_vec.h"
#include "cvlearn/measurement.h"

namespace cvlearn {

/// Number of summands folded sequentially before a partial sum is handed to
/// the pairwise reduction. Fixed so that sums do not depend on threading.
inline constexpr std::size_t kSumChunk = 1024;

/// Sum of chunk partials by pairwise (tree) reduction.
Complex pairwise_sum(std::vector<Complex> partials);

/// Unbiased characteristic-function estimator on Bell records:
///   (1/N) sum_i exp(e^{-2 r_eff} |beta|^2) e^{zeta_i^dagger beta - beta^dagger zeta_i}.
/// Pilot-tagged records are skipped.
Complex estimate_char_fn(std::span<const BellRecord> records,
                         const ComplexVec& beta, double r_eff);

struct EstimateWithError {
  Complex value;
  double stderr_re = 0.0;  // sample std / sqrt(N) of the real summands
  double stderr_im = 0.0;
  std::size_t count = 0;
};

/// estimate_char_fn plus per-component standard errors.
EstimateWithError estimate_char_fn_with_error(
    std::span<const BellRecord> records, const ComplexVec& beta, double r_eff);

/// Affine drift from pilot records: column 0 is the mean pilot_x outcome,
/// column 1 the mean pilot_p outcome, both divided by the pilot amplitude.
/// Means run over every mode of every pilot record.
Affine2 estimate_affine(std::span<const BellRecord> records, double amplitude);

/// Dual point seen through the drift. For zeta = A alpha the pairing
/// Im(zeta^dagger beta') equals Im(alpha^dagger beta) when each mode's
/// (Re, Im) pair transforms by J^{-1} A^{-T} J = A / det A, the inverse
/// drift acting on the dual (symplectically paired) coordinates.
ComplexVec correct_dual_point(const ComplexVec& beta, const Affine2& affine);

/// Drift-corrected estimator: estimate_char_fn at correct_dual_point(beta, A),
/// whose prefactor e^{e^{-2 r_eff}|beta'|^2} matches the noise added after the
/// drift. The identity affine returns estimate_char_fn bit for bit.
Complex estimate_char_fn_corrected(std::span<const BellRecord> records,
                                   const ComplexVec& beta, double r_eff,
                                   const Affine2& affine);

/// Im(zeta_i^dagger d) for every non-pilot record; the estimator along the ray
/// beta = b d depends on a record only through this value.
std::vector<double> project(std::span<const BellRecord> records,
                            const ComplexVec& direction);

struct SlicePoint {
  double b = 0.0;
  Complex value;
};

/// Evaluates lambda~(b d) on a fixed b grid from projections w_i = Im(zeta_i^dagger d):
///   lambda~(b d) = e^{e^{-2r}|d|^2 b^2} (1/N) sum_i e^{2 i b w_i}.
/// Uniform grids starting at 0 use a phasor recurrence instead of one sincos
/// per grid point.
class SliceEvaluator {
 public:
  SliceEvaluator(std::vector<double> grid, double direction_norm_sq,
                 double r_eff);

  const std::vector<double>& grid() const { return grid_; }

  /// for_each(consume) must call consume(w) once per summand.
  template <class ForEach>
  std::vector<Complex> evaluate_with(ForEach&& for_each) const;

  std::vector<Complex> evaluate(std::span<const double> projections) const {
    return evaluate_with([&](auto&& consume) {
      for (double w : projections) consume(w);
    });
  }

 private:
  void accumulate(double w, std::vector<Complex>& acc) const;

  std::vector<double> grid_;
  std::vector<double> prefactor_;
  bool uniform_ = false;
  double step_ = 0.0;
};

/// Corrected estimator along beta = b * direction for each b.
std::vector<SlicePoint> reconstruct_slice(std::span<const BellRecord> records,
                                          const ComplexVec& direction,
                                          std::span<const double> b_grid,
                                          double r_eff,
                                          const Affine2& affine = Affine2::identity());

// ---------------------------------------------------------------------------

template <class ForEach>
std::vector<Complex> SliceEvaluator::evaluate_with(ForEach&& for_each) const {
  const std::size_t g = grid_.size();
  std::vector<Complex> acc(g);
  std::vector<std::vector<Complex>> partials(g);
  std::size_t count = 0;
  std::size_t in_chunk = 0;
  for_each([&](double w) {
    accumulate(w, acc);
    ++count;
    if (++in_chunk == kSumChunk) {
      for (std::size_t k = 0; k < g; ++k) {
        partials[k].push_back(acc[k]);
        acc[k] = Complex{};
      }
      in_chunk = 0;
    }
  });
  std::vector<Complex> out(g);
  if (count == 0) return out;
  for (std::size_t k = 0; k < g; ++k) {
    if (in_chunk > 0) partials[k].push_back(acc[k]);
    out[k] = pairwise_sum(std::move(partials[k])) *
             (prefactor_[k] / static_cast<double>(count));
  }
  return out;
}

}  // namespace cvlearn

#endif  // CVLEARN_ESTIMATOR_H_
