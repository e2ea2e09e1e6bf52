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

#ifndef CVLEARN_MEASUREMENT_H_
#define CVLEARN_MEASUREMENT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvlearn/complex_vec.h"
#include "cvlearn/process.h"

namespace cvlearn {

/// Two-mode squeezing level and probe-arm transmissivity T_a.
struct SqueezingSpec {
  double squeezing_db = 0.0;  // +infinity is the noiseless limit
  double transmissivity = 1.0;

  void validate() const;
  /// e^{-2r} = 10^{-dB/10}.
  double raw_noise_factor() const;
};

/// r_eff = -1/2 log(e^{-2r} + (1 - T_a)/T_a).
double effective_squeezing(const SqueezingSpec& squeezing);

/// e^{-2 r_eff}; zero for r_eff = +infinity.
double noise_factor(double r_eff);

/// Squeezing in dB whose lossless r_eff equals the given value.
double squeezing_db_for(double r_eff);

/// Real 2x2 matrix acting on a mode's (x, p) = (Re, Im) pair.
struct Affine2 {
  // Row-major: [[xx, xp], [px, pp]].
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

  static Affine2 identity() { return {}; }
  static Affine2 rotation(double theta);
  static Affine2 from_rows(double a, double b, double c, double d) {
    return Affine2{{a, b, c, d}};
  }

  double det() const { return m[0] * m[3] - m[1] * m[2]; }
  bool is_identity() const {
    return m[0] == 1.0 && m[1] == 0.0 && m[2] == 0.0 && m[3] == 1.0;
  }
  Affine2 inverse() const;
  Complex apply(Complex z) const {
    return {m[0] * z.real() + m[1] * z.imag(), m[2] * z.real() + m[3] * z.imag()};
  }
  friend bool operator==(const Affine2&, const Affine2&) = default;
};

/// One global distortion applied to every mode's displacement before the Bell
/// noise is added. noise_scale multiplies the noise variance.
struct DriftModel {
  Affine2 affine;
  double noise_scale = 1.0;

  void validate() const;
};

enum class PilotTag { kNone, kPilotX, kPilotP };

std::string to_string(PilotTag tag);
PilotTag pilot_tag_from_string(const std::string& s);

/// Outcomes zeta_j = x_j + i p_j of one n-mode Bell measurement.
struct BellRecord {
  ComplexVec zeta;
  std::int64_t sample_index = 0;
  PilotTag pilot_tag = PilotTag::kNone;
};

/// Records per rng stream. Chunk c of a batch always uses stream
/// (seed, kSimulate, c), whatever the thread count.
inline constexpr std::size_t kSimulationChunk = 4096;

/// Draws alpha ~ spec, then zeta_j = A(alpha_j) + nu_j where each quadrature
/// of nu_j is N(0, e^{-2 r_eff}/2 * noise_scale). With the identity drift the
/// estimator of estimate_char_fn is unbiased on these records.
std::vector<BellRecord> simulate_bell_batch(const ProcessSpec& spec,
                                            double r_eff,
                                            const DriftModel& drift,
                                            std::size_t count,
                                            std::uint64_t seed);

std::vector<BellRecord> simulate_bell_batch(const ProcessSpec& spec,
                                            const SqueezingSpec& squeezing,
                                            const DriftModel& drift,
                                            std::size_t count,
                                            std::uint64_t seed);

/// Same draws as simulate_bell_batch, but each record is reduced on the fly
/// to Im(zeta^dagger d) for every direction d and then discarded. Result
/// [k][i] is bit-identical to im_inner(records[i].zeta, directions[k]).
std::vector<std::vector<double>> simulate_projections(
    const ProcessSpec& spec, double r_eff, const DriftModel& drift,
    std::size_t count, std::uint64_t seed,
    std::span<const ComplexVec> directions);

/// Interleaves known calibration displacements into a record stream. Every
/// period-th output record is a pilot, alternating x (amplitude + 0i) and p
/// (0 + i amplitude) on all modes, passed through the same drift and noise
/// law. Data records are copied unchanged; pilots get sample indices after
/// the largest data index.
std::vector<BellRecord> inject_pilots(std::span<const BellRecord> records,
                                      std::size_t period, double amplitude,
                                      std::uint64_t seed, double r_eff,
                                      const DriftModel& drift);

}  // namespace cvlearn

#endif  // CVLEARN_MEASUREMENT_H_
