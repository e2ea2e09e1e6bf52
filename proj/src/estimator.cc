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

#include "cvlearn/estimator.h"

#include <cmath>

#include "cvlearn/error.h"

namespace cvlearn {

Complex pairwise_sum(std::vector<Complex> partials) {
  if (partials.empty()) return {};
  while (partials.size() > 1) {
    const std::size_t half = partials.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      partials[i] = partials[2 * i] + partials[2 * i + 1];
    }
    if (partials.size() % 2 == 1) {
      partials[half] = partials.back();
      partials.resize(half + 1);
    } else {
      partials.resize(half);
    }
  }
  return partials.front();
}

namespace {

struct PhaseMoments {
  Complex sum;
  double sum_sq_re = 0.0;
  double sum_sq_im = 0.0;
  std::size_t count = 0;
};

PhaseMoments phase_moments(std::span<const BellRecord> records,
                           const ComplexVec& beta) {
  std::vector<Complex> partials;
  PhaseMoments m;
  Complex acc;
  std::size_t in_chunk = 0;
  for (const BellRecord& r : records) {
    if (r.pilot_tag != PilotTag::kNone) continue;
    const double phase = 2.0 * im_inner(r.zeta, beta);
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    acc += Complex(c, s);
    m.sum_sq_re += c * c;
    m.sum_sq_im += s * s;
    ++m.count;
    if (++in_chunk == kSumChunk) {
      partials.push_back(acc);
      acc = Complex{};
      in_chunk = 0;
    }
  }
  if (in_chunk > 0) partials.push_back(acc);
  m.sum = pairwise_sum(std::move(partials));
  return m;
}

void check_beta(std::span<const BellRecord> records, const ComplexVec& beta) {
  for (const BellRecord& r : records) {
    if (r.pilot_tag != PilotTag::kNone) continue;
    if (r.zeta.size() != beta.size()) {
      throw InvalidInput("dimension mismatch: record has " +
                         std::to_string(r.zeta.size()) + " modes, beta has " +
                         std::to_string(beta.size()));
    }
    return;
  }
  throw InvalidInput("estimator needs at least one non-pilot record");
}

}  // namespace

Complex estimate_char_fn(std::span<const BellRecord> records,
                         const ComplexVec& beta, double r_eff) {
  return estimate_char_fn_with_error(records, beta, r_eff).value;
}

EstimateWithError estimate_char_fn_with_error(
    std::span<const BellRecord> records, const ComplexVec& beta, double r_eff) {
  check_beta(records, beta);
  const PhaseMoments m = phase_moments(records, beta);
  const double n = static_cast<double>(m.count);
  const double pre = std::exp(noise_factor(r_eff) * beta.norm_sq());
  const Complex mean = m.sum / n;
  EstimateWithError out;
  out.value = mean * pre;
  out.count = m.count;
  if (m.count > 1) {
    const double var_re =
        (m.sum_sq_re - n * mean.real() * mean.real()) / (n - 1.0);
    const double var_im =
        (m.sum_sq_im - n * mean.imag() * mean.imag()) / (n - 1.0);
    out.stderr_re = pre * std::sqrt(std::max(0.0, var_re) / n);
    out.stderr_im = pre * std::sqrt(std::max(0.0, var_im) / n);
  }
  return out;
}

Affine2 estimate_affine(std::span<const BellRecord> records, double amplitude) {
  require(std::isfinite(amplitude) && amplitude > 0.0,
          "pilot amplitude must be positive");
  Complex sum_x;
  Complex sum_p;
  std::size_t nx = 0;
  std::size_t np = 0;
  for (const BellRecord& r : records) {
    if (r.pilot_tag == PilotTag::kPilotX) {
      for (const Complex& z : r.zeta.view()) sum_x += z;
      nx += r.zeta.size();
    } else if (r.pilot_tag == PilotTag::kPilotP) {
      for (const Complex& z : r.zeta.view()) sum_p += z;
      np += r.zeta.size();
    }
  }
  require(nx > 0 && np > 0,
          "estimate_affine needs both pilot_x and pilot_p records");
  const Complex dx = sum_x / static_cast<double>(nx);
  const Complex dp = sum_p / static_cast<double>(np);
  return Affine2::from_rows(dx.real() / amplitude, dp.real() / amplitude,
                            dx.imag() / amplitude, dp.imag() / amplitude);
}

ComplexVec correct_dual_point(const ComplexVec& beta, const Affine2& affine) {
  if (affine.is_identity()) return beta;
  const double d = affine.det();
  require(d != 0.0 && std::isfinite(d), "affine matrix is singular");
  std::vector<Complex> out(beta.size());
  for (std::size_t j = 0; j < beta.size(); ++j) out[j] = affine.apply(beta[j]) / d;
  return ComplexVec(std::move(out));
}

Complex estimate_char_fn_corrected(std::span<const BellRecord> records,
                                   const ComplexVec& beta, double r_eff,
                                   const Affine2& affine) {
  return estimate_char_fn(records, correct_dual_point(beta, affine), r_eff);
}

std::vector<double> project(std::span<const BellRecord> records,
                            const ComplexVec& direction) {
  std::vector<double> w;
  w.reserve(records.size());
  for (const BellRecord& r : records) {
    if (r.pilot_tag != PilotTag::kNone) continue;
    w.push_back(im_inner(r.zeta, direction));
  }
  return w;
}

SliceEvaluator::SliceEvaluator(std::vector<double> grid,
                               double direction_norm_sq, double r_eff)
    : grid_(std::move(grid)) {
  require(!grid_.empty(), "slice grid must be non-empty");
  const double nf = noise_factor(r_eff);
  prefactor_.reserve(grid_.size());
  for (double b : grid_) {
    require(std::isfinite(b) && b >= 0.0, "slice grid values must be >= 0");
    prefactor_.push_back(std::exp(nf * direction_norm_sq * b * b));
  }
  if (grid_.size() >= 2 && grid_[0] == 0.0) {
    step_ = grid_[1];
    uniform_ = step_ > 0.0;
    for (std::size_t k = 0; uniform_ && k < grid_.size(); ++k) {
      uniform_ = std::abs(grid_[k] - step_ * static_cast<double>(k)) <=
                 1e-12 * std::max(1.0, grid_[k]);
    }
  }
}

void SliceEvaluator::accumulate(double w, std::vector<Complex>& acc) const {
  if (uniform_) {
    const double phase = 2.0 * step_ * w;
    const double cr = std::cos(phase);
    const double ci = std::sin(phase);
    // Plain real arithmetic: std::complex products go through the
    // NaN-checking runtime helper.
    double* a = reinterpret_cast<double*>(acc.data());
    double zr = 1.0, zi = 0.0;
    a[0] += 1.0;
    for (std::size_t k = 1; k < acc.size(); ++k) {
      const double nr = zr * cr - zi * ci;
      zi = zr * ci + zi * cr;
      zr = nr;
      a[2 * k] += zr;
      a[2 * k + 1] += zi;
    }
    return;
  }
  for (std::size_t k = 0; k < acc.size(); ++k) {
    const double phase = 2.0 * grid_[k] * w;
    acc[k] += Complex(std::cos(phase), std::sin(phase));
  }
}

std::vector<SlicePoint> reconstruct_slice(std::span<const BellRecord> records,
                                          const ComplexVec& direction,
                                          std::span<const double> b_grid,
                                          double r_eff, const Affine2& affine) {
  require(direction.norm_sq() > 0.0, "slice direction must be nonzero");
  check_beta(records, direction);
  const ComplexVec corrected = correct_dual_point(direction, affine);
  const SliceEvaluator eval(std::vector<double>(b_grid.begin(), b_grid.end()),
                            corrected.norm_sq(), r_eff);
  const std::vector<Complex> values = eval.evaluate(project(records, corrected));
  std::vector<SlicePoint> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out[k] = SlicePoint{b_grid[k], values[k]};
  }
  return out;
}

}  // namespace cvlearn
