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

#include "cvlearn/process.h"

#include <cmath>

#include <gtest/gtest.h>

#include "cvlearn/error.h"

namespace cvlearn {
namespace {

const Complex kG(0.3, 0.3);

ProcessSpec one_mode_three_peak() {
  return ProcessSpec::three_peak(ComplexVec{kG}, 0.3, 0.25);
}

// Direct 2D quadrature of the normalized density against the phase
// e^{2i Im(alpha^* beta)}; independent of the closed form.
Complex fourier_quadrature(const ProcessSpec& spec, Complex beta) {
  const int m = 600;
  const double l = 12.0, h = 2.0 * l / m;
  Complex num;
  double den = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Complex a(-l + (i + 0.5) * h, -l + (j + 0.5) * h);
      const double w = pdf_weight(spec, ComplexVec{a});
      const double phase = 2.0 * (a.real() * beta.imag() - a.imag() * beta.real());
      num += w * Complex(std::cos(phase), std::sin(phase));
      den += w;
    }
  }
  return num / den;
}

TEST(ProcessSpec, FactoryValidation) {
  EXPECT_THROW(ProcessSpec::three_peak(ComplexVec{kG}, 0.0, 0.25), InvalidInput);
  EXPECT_THROW(ProcessSpec::three_peak(ComplexVec{kG}, 0.3, 0.26), InvalidInput);
  EXPECT_THROW(ProcessSpec::gaussian(1, -0.1), InvalidInput);
  EXPECT_THROW(ProcessSpec::gaussian(0, 0.3), InvalidInput);
  EXPECT_NO_THROW(ProcessSpec::three_peak(ComplexVec{kG}, 0.3, 0.0));
}

TEST(CharFn, ThreePeakOriginIsExactlyOne) {
  for (double s : {0.1, 0.3, 2.0}) {
    const auto spec = ProcessSpec::three_peak(ComplexVec{{1.0, -2.0}, {0.5, 0.1}}, s, 0.25);
    EXPECT_EQ(char_fn(spec, ComplexVec::zeros(2)), Complex(1.0, 0.0));
  }
}

TEST(CharFn, ThreePeakSidePeak) {
  const auto g = ComplexVec::filled(40, kG);
  const auto spec = ProcessSpec::three_peak(g, 0.3, 0.25);
  const Complex v = char_fn(spec, g);
  EXPECT_NEAR(v.real(), std::exp(-40.0), 1e-20);
  EXPECT_NEAR(v.imag(), 0.5, 1e-15);
}

TEST(CharFn, GaussianValue) {
  const auto spec = ProcessSpec::gaussian(1, 0.3);
  const ComplexVec beta{{0.3, 0.3}};  // |beta|^2 = 0.18
  EXPECT_NEAR(char_fn(spec, beta).real(), std::exp(-1.0), 1e-15);
  EXPECT_EQ(char_fn(spec, beta).imag(), 0.0);
}

TEST(CharFn, FixedIsPurePhase) {
  const auto spec = ProcessSpec::fixed(ComplexVec{{1.0, 0.0}});
  const Complex v = char_fn(spec, ComplexVec{{0.0, 0.5}});
  EXPECT_NEAR(v.real(), std::cos(1.0), 1e-15);
  EXPECT_NEAR(v.imag(), std::sin(1.0), 1e-15);
}

TEST(CharFn, HermitianSymmetry) {
  const std::vector<ProcessSpec> specs = {
      one_mode_three_peak(), ProcessSpec::gaussian(1, 0.4),
      ProcessSpec::fixed(ComplexVec{{0.7, -0.2}})};
  for (const auto& spec : specs) {
    for (double t : {0.1, 0.5, 1.3}) {
      const ComplexVec b{{t, 0.4 - t}};
      EXPECT_NEAR(std::abs(char_fn(spec, -b) - std::conj(char_fn(spec, b))), 0.0, 1e-15);
    }
  }
}

TEST(CharFn, MatchesFourierQuadratureOfDensity) {
  const auto spec = one_mode_three_peak();
  for (Complex beta : {Complex(0, 0), kG, -kG, Complex(0.5, -0.2), Complex(0.1, 0.6)}) {
    const Complex expect = fourier_quadrature(spec, beta);
    EXPECT_NEAR(std::abs(char_fn(spec, ComplexVec{beta}) - expect), 0.0, 1e-9)
        << "beta=" << beta;
  }
}

TEST(PdfWeight, HandValues) {
  const auto spec = one_mode_three_peak();
  EXPECT_DOUBLE_EQ(pdf_weight(spec, ComplexVec{{0.0, 0.0}}), 1.0);
  // 2 Im(alpha^* gamma) = 2 * 2.618 * 0.3 = pi/2 (to 4 digits)
  EXPECT_NEAR(pdf_weight(spec, ComplexVec{{2.618, 0.0}}), 0.5824, 1e-4);
  EXPECT_NEAR(pdf_weight(ProcessSpec::gaussian(1, 0.3), ComplexVec{{1.0, 0.0}}),
              std::exp(-0.18), 1e-15);
  EXPECT_THROW(pdf_weight(ProcessSpec::fixed(ComplexVec{kG}), ComplexVec{kG}),
               UnsupportedVariant);
}

TEST(PdfWeight, NonNegative) {
  const auto spec = ProcessSpec::three_peak(ComplexVec{{0.9, -0.4}, {0.2, 0.3}}, 0.3, 0.25);
  Engine rng = make_stream(3, StreamSalt::kGeneric);
  for (int i = 0; i < 100000; ++i) {
    const ComplexVec a{{4 * standard_normal(rng), 4 * standard_normal(rng)},
                       {4 * standard_normal(rng), 4 * standard_normal(rng)}};
    ASSERT_GE(pdf_weight(spec, a), 0.0);
  }
}

TEST(Sampler, FixedReturnsAlpha0) {
  const ComplexVec a0{{1.5, -0.5}, {0.0, 2.0}};
  const auto spec = ProcessSpec::fixed(a0);
  Engine rng = make_stream(1, StreamSalt::kGeneric);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_displacement(spec, rng), a0);
}

TEST(Sampler, ThreePeakAcceptanceIsOneHalf) {
  const auto spec = ProcessSpec::three_peak(ComplexVec::filled(3, kG), 0.3, 0.25);
  Engine rng = make_stream(2, StreamSalt::kGeneric);
  std::vector<Complex> buf(3);
  std::size_t proposals = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) proposals += sample_displacement_into(spec, rng, buf);
  EXPECT_NEAR(static_cast<double>(draws) / proposals, 0.5, 0.01);
}

TEST(Sampler, GaussianQuadratureVariance) {
  const auto spec = ProcessSpec::gaussian(1, 0.3);
  Engine rng = make_stream(4, StreamSalt::kGeneric);
  const int n = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_displacement(spec, rng)[0].real();
    s += x;
    s2 += x * x;
  }
  const double var = s2 / n - (s / n) * (s / n);
  EXPECT_NEAR(var, 1.0 / (4 * 0.09), 0.02 * 2.778);
}

TEST(Sampler, Deterministic) {
  const auto spec = one_mode_three_peak();
  Engine a = make_stream(9, StreamSalt::kGeneric), b = make_stream(9, StreamSalt::kGeneric);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_displacement(spec, a), sample_displacement(spec, b));
}

TEST(DrawGamma, MeanNormAndVariance) {
  Engine rng = make_stream(11, StreamSalt::kGeneric);
  const double sg2 = 0.99 * 0.2 / 2.0;
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) mean += draw_gamma(50, sg2, rng).norm_sq();
  mean /= 10000;
  EXPECT_NEAR(mean, 9.9, 0.02 * 9.9);

  double s2 = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) s2 += draw_gamma(8, sg2, rng).norm_sq();
  EXPECT_NEAR(s2 / (16.0 * m), sg2, 0.03 * sg2);

  EXPECT_LT(draw_gamma(1, 1e-20, rng).norm(), 1e-8);
}

TEST(EmpiricalCharFn, ZeroSamplesGiveOne) {
  const std::vector<ComplexVec> zeros(5, ComplexVec::zeros(2));
  EXPECT_EQ(empirical_char_fn(zeros, ComplexVec{{0.3, 1.0}, {2.0, 0.1}}), Complex(1.0, 0.0));
  EXPECT_THROW(empirical_char_fn({}, ComplexVec{kG}), InvalidInput);
}

TEST(EmpiricalCharFn, FourierConsistency) {
  const std::vector<ProcessSpec> specs = {
      one_mode_three_peak(),
      ProcessSpec::three_peak(ComplexVec{kG, {-0.2, 0.4}}, 0.3, 0.25)};
  for (const auto& spec : specs) {
    Engine rng = make_stream(12, StreamSalt::kGeneric);
    std::vector<ComplexVec> samples;
    for (int i = 0; i < 1000000; ++i) samples.push_back(sample_displacement(spec, rng));
    Engine brng = make_stream(13, StreamSalt::kGeneric);
    for (int k = 0; k < 20; ++k) {
      std::vector<Complex> b;
      for (std::size_t j = 0; j < spec.modes(); ++j) {
        b.emplace_back(uniform01(brng) - 0.5, uniform01(brng) - 0.5);
      }
      ComplexVec beta(b);
      if (beta.norm() > 1.0) beta = beta.scaled(1.0 / beta.norm());
      EXPECT_LT(std::abs(empirical_char_fn(samples, beta) - char_fn(spec, beta)), 0.01);
    }
  }
}

TEST(ProcessJson, RoundTripAndValidation) {
  const std::vector<ProcessSpec> specs = {
      one_mode_three_peak(), ProcessSpec::gaussian(3, 0.4),
      ProcessSpec::fixed(ComplexVec{{1.0, 2.0}})};
  for (const auto& s : specs) EXPECT_EQ(process_from_json(to_json(s)), s);
  auto j = to_json(one_mode_three_peak());
  j["bogus"] = 1;
  EXPECT_THROW(process_from_json(j), InvalidInput);
}

}  // namespace
}  // namespace cvlearn
