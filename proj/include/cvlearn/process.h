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

#ifndef CVLEARN_PROCESS_H_
#define CVLEARN_PROCESS_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cvlearn/complex_vec.h"
#include "cvlearn/rng.h"
#include "json.hpp"

namespace cvlearn {

/// Three-peak process: characteristic function with a central Gaussian peak
/// of width sigma and two imaginary side peaks of height 2*epsilon0 at
/// +/- gamma.
struct ThreePeakSpec {
  ComplexVec gamma;
  double sigma = 0.3;
  double epsilon0 = 0.25;
};

/// Isotropic Gaussian process with characteristic-function width sigma.
struct GaussianSpec {
  std::size_t n = 1;
  double sigma = 0.3;
};

/// Deterministic displacement alpha0 (pilot modes, diagnosis grids).
struct FixedSpec {
  ComplexVec alpha0;
};

enum class ProcessKind { kThreePeak, kGaussian, kFixed };

std::string to_string(ProcessKind kind);

/// Tagged description of a random displacement process. Construction goes
/// through the factories, which enforce sigma > 0 and 0 <= epsilon0 <= 0.25
/// (above 0.25 the density 1 + 4 eps0 sin(.) turns negative).
class ProcessSpec {
 public:
  using Variant = std::variant<ThreePeakSpec, GaussianSpec, FixedSpec>;

  static ProcessSpec three_peak(ComplexVec gamma, double sigma, double epsilon0);
  static ProcessSpec gaussian(std::size_t n, double sigma);
  static ProcessSpec fixed(ComplexVec alpha0);

  std::size_t modes() const;
  ProcessKind kind() const;
  const Variant& variant() const { return v_; }

  friend bool operator==(const ProcessSpec& a, const ProcessSpec& b);

 private:
  explicit ProcessSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Closed-form characteristic function lambda(beta).
Complex char_fn(const ProcessSpec& spec, const ComplexVec& beta);

/// Unnormalized density p(alpha). ThreePeak: e^{-2 s^2 |a|^2}(1 + 4 eps0
/// sin(2 Im(a^dagger gamma))); Gaussian: the envelope alone. Fixed processes
/// have a delta density and raise UnsupportedVariant.
double pdf_weight(const ProcessSpec& spec, const ComplexVec& alpha);

/// Exact draw: each quadrature ~ N(0, 1/(4 sigma^2)); three-peak proposals are
/// accepted with probability (1 + 4 eps0 sin(.))/2 until one is accepted.
ComplexVec sample_displacement(const ProcessSpec& spec, Engine& rng);

/// Allocation-free variant of sample_displacement; out.size() == modes().
/// Returns the number of proposals consumed (1 for Gaussian and Fixed).
std::size_t sample_displacement_into(const ProcessSpec& spec, Engine& rng,
                                     std::span<Complex> out);

/// Peak location drawn from q(gamma): every real coordinate i.i.d.
/// N(0, sigma_gamma_sq).
ComplexVec draw_gamma(std::size_t n, double sigma_gamma_sq, Engine& rng);

/// (1/M) sum_m e^{alpha_m^dagger beta - beta^dagger alpha_m}, the Monte Carlo
/// Fourier transform of noiseless displacement samples.
Complex empirical_char_fn(std::span<const ComplexVec> samples,
                          const ComplexVec& beta);

nlohmann::json to_json(const ProcessSpec& spec);
ProcessSpec process_from_json(const nlohmann::json& j);

nlohmann::json complex_vec_to_json(const ComplexVec& v);
ComplexVec complex_vec_from_json(const nlohmann::json& j);

}  // namespace cvlearn

#endif  // CVLEARN_PROCESS_H_
