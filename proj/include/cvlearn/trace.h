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

#ifndef CVLEARN_TRACE_H_
#define CVLEARN_TRACE_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cvlearn/complex_vec.h"
#include "cvlearn/measurement.h"
#include "cvlearn/rng.h"

namespace cvlearn {

inline constexpr double kDefaultSampleRateHz = 100e6;

struct ModeFunctionSpec {
  double sideband_hz = 3.8e6;
  double envelope_kappa_rad_s = 2.0 * 3.14159265358979323846 * 1e6;
  double mode_duration_s = 1e-6;

  void validate() const;
};

struct TimeTrace {
  double sample_rate_hz = kDefaultSampleRateHz;
  std::vector<double> samples;
  double t0_offset_s = 0.0;  // time of samples[0]

  /// Requires sample_rate >= 10 x sideband and finite samples.
  void validate(const ModeFunctionSpec& spec) const;
  double dt() const { return 1.0 / sample_rate_hz; }
};

/// f_k(t) = cos(2 pi f_sb (t - k tau)) exp(-kappa^2 (t - k tau)^2 / 2) for
/// |t - k tau| < tau / 2, else 0.
double mode_function(const ModeFunctionSpec& spec, long k, double t);

/// q_k = vacuum_scale * sum_j f_k(t_j - delay) q_j / sum_j f_k(t_j - delay)^2
/// for every mode whose window lies inside the trace. With vacuum_scale = 1 a
/// mode-matched waveform d f_k yields d. Returns an empty list (and logs a
/// warning) when not even one window fits.
std::vector<double> extract_quadratures(const TimeTrace& trace,
                                        const ModeFunctionSpec& spec,
                                        double delay_s, double vacuum_scale = 1.0);

/// sum_j f_0(t_j)^2 over one window sampled at `sample_rate_hz`.
double mode_energy(const ModeFunctionSpec& spec, double sample_rate_hz);

/// White-noise std per sample for which extraction with vacuum_scale = 1
/// yields quadrature variance 1/2.
double vacuum_noise_std(const ModeFunctionSpec& spec, double sample_rate_hz);

/// Scale that maps quadratures extracted from a vacuum segment (with
/// vacuum_scale = 1) to variance 1/2.
double vacuum_scale_from(std::span<const double> vacuum_quadratures);

enum class Quadrature { kX, kP };

/// sum_k d_k f_k(t - delay) + noise. The commanded (Re d_k, Im d_k) pair is
/// mixed by `crosstalk` first and the x or p component is emitted. Samples
/// start half a window before mode 0 and end with the last window.
TimeTrace synth_trace(std::span<const Complex> displacements, Quadrature which,
                      const ModeFunctionSpec& spec, double noise_std,
                      double delay_s, const Affine2& crosstalk, Engine& rng,
                      double sample_rate_hz = kDefaultSampleRateHz);

/// Lag (a whole number of samples, in seconds) maximizing the correlation of
/// the trace with f_0, zero-padded at the edges. Throws on a flat trace.
double estimate_delay(const TimeTrace& trace, const ModeFunctionSpec& spec);

struct CrosstalkSample {
  double amplitude = 0.0;
  double x = 0.0;
  double p = 0.0;
};

/// Least-squares slopes (with intercept) of measured x and p against the
/// commanded amplitude. The IM sweep gives column 0, the PM sweep column 1.
/// Each sweep needs at least two distinct amplitudes.
Affine2 calibrate_crosstalk(std::span<const CrosstalkSample> im_sweep,
                            std::span<const CrosstalkSample> pm_sweep);

/// Commanded displacement that yields `target` after the crosstalk.
Complex correct_command(const Affine2& crosstalk, Complex target);

/// JSON header line {sample_rate_hz, t0_offset_s, length} followed by
/// little-endian float64 samples.
void write_trace(std::ostream& out, const TimeTrace& trace);
void write_trace(const std::string& path, const TimeTrace& trace);
TimeTrace read_trace(std::istream& in);
TimeTrace read_trace(const std::string& path);

/// CSV with header t_s,q for small fixtures.
void write_trace_csv(std::ostream& out, const TimeTrace& trace);
TimeTrace read_trace_csv(std::istream& in);

}  // namespace cvlearn

#endif  // CVLEARN_TRACE_H_
