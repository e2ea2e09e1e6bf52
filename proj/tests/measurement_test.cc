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

#include "cvlearn/measurement.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cvlearn/error.h"
#include "cvlearn/parallel.h"

namespace cvlearn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Moments {
  double mean_re = 0, mean_im = 0, var_re = 0, var_im = 0;
};

Moments moments(const std::vector<BellRecord>& recs, std::size_t mode = 0) {
  Moments m;
  const double n = static_cast<double>(recs.size());
  for (const auto& r : recs) {
    m.mean_re += r.zeta[mode].real();
    m.mean_im += r.zeta[mode].imag();
  }
  m.mean_re /= n;
  m.mean_im /= n;
  for (const auto& r : recs) {
    m.var_re += std::pow(r.zeta[mode].real() - m.mean_re, 2);
    m.var_im += std::pow(r.zeta[mode].imag() - m.mean_im, 2);
  }
  m.var_re /= n - 1;
  m.var_im /= n - 1;
  return m;
}

TEST(Squeezing, EffectiveSqueezing) {
  EXPECT_DOUBLE_EQ(effective_squeezing({0.0, 1.0}), 0.0);
  EXPECT_FALSE(std::signbit(effective_squeezing({0.0, 1.0})));
  const double r = 0.4;
  EXPECT_NEAR(effective_squeezing({squeezing_db_for(r), 1.0}), r, 1e-14);
  EXPECT_NEAR(effective_squeezing({kInf, 0.8}), -0.5 * std::log(0.25), 1e-15);
  EXPECT_NEAR(noise_factor(effective_squeezing({4.78, 1.0})), std::pow(10.0, -0.478), 1e-15);
  EXPECT_NEAR(noise_factor(effective_squeezing({4.78, 1.0})), 0.3327, 1e-4);
  EXPECT_EQ(effective_squeezing({kInf, 1.0}), kInf);
  EXPECT_EQ(noise_factor(kInf), 0.0);
  // Glossary form: -1/2 log(e^{-2r} + (1 - T)/T).
  EXPECT_NEAR(effective_squeezing({3.0, 0.9}),
              -0.5 * std::log(std::pow(10.0, -0.3) + 0.1 / 0.9), 1e-15);
}

TEST(Squeezing, Validation) {
  EXPECT_THROW(effective_squeezing({-1.0, 1.0}), InvalidInput);
  EXPECT_THROW(effective_squeezing({1.0, 0.0}), InvalidInput);
  EXPECT_THROW(effective_squeezing({1.0, 1.5}), InvalidInput);
}

TEST(Affine, InverseAndRotation) {
  const Affine2 a = Affine2::from_rows(1.0, 0.2, -0.3, 0.9);
  const Affine2 b = a.inverse();
  const Complex z(0.7, -1.1);
  const Complex back = b.apply(a.apply(z));
  EXPECT_NEAR(std::abs(back - z), 0.0, 1e-15);
  const Affine2 r = Affine2::rotation(M_PI / 2);
  EXPECT_NEAR(std::abs(r.apply(Complex(1, 0)) - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_THROW(Affine2::from_rows(1, 2, 2, 4).inverse(), InvalidInput);
}

TEST(Simulate, NoiselessFixedIsExact) {
  const ComplexVec a0{{1.0, -2.0}, {0.5, 0.25}};
  const auto recs = simulate_bell_batch(ProcessSpec::fixed(a0), kInf, DriftModel{}, 100, 1);
  for (const auto& r : recs) EXPECT_EQ(r.zeta, a0);
}

TEST(Simulate, VacuumNoiseVarianceIsOneHalf) {
  const auto recs = simulate_bell_batch(ProcessSpec::fixed(ComplexVec{{1.0, 0.0}}), 0.0,
                                        DriftModel{}, 1000000, 2);
  const Moments m = moments(recs);
  EXPECT_NEAR(m.mean_re, 1.0, 0.005);
  EXPECT_NEAR(m.var_re, 0.5, 0.01);
  EXPECT_NEAR(m.var_im, 0.5, 0.01);
}

TEST(Simulate, NoiseCalibrationGrid) {
  for (double r : {0.0, 0.26, 0.55}) {
    const auto recs = simulate_bell_batch(ProcessSpec::fixed(ComplexVec{{0.0, 0.0}}), r,
                                          DriftModel{}, 1000000, 3);
    const Moments m = moments(recs);
    const double expect = noise_factor(r) / 2.0;
    // Standard error of a sample variance of a normal: var * sqrt(2 / (N - 1)).
    const double se = expect * std::sqrt(2.0 / 999999.0);
    EXPECT_NEAR(m.var_re, expect, 3 * se) << r;
    EXPECT_NEAR(m.var_im, expect, 3 * se) << r;
  }
}

TEST(Simulate, VarianceAdditivity) {
  const double r = effective_squeezing({4.78, 1.0});
  const auto recs =
      simulate_bell_batch(ProcessSpec::gaussian(1, 0.3), r, DriftModel{}, 400000, 4);
  const double expect = 1.0 / (4 * 0.09) + noise_factor(r) / 2.0;
  EXPECT_NEAR(moments(recs).var_re, expect, 0.02 * expect);
}

TEST(Simulate, DeterministicAndThreadInvariant) {
  const auto spec = ProcessSpec::three_peak(ComplexVec::filled(3, {0.3, 0.3}), 0.3, 0.25);
  set_thread_limit(1);
  const auto a = simulate_bell_batch(spec, 0.3, DriftModel{}, 10000, 5);
  set_thread_limit(4);
  const auto b = simulate_bell_batch(spec, 0.3, DriftModel{}, 10000, 5);
  set_thread_limit(0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].zeta, b[i].zeta);
    EXPECT_EQ(a[i].sample_index, static_cast<std::int64_t>(i));
  }
  const auto c = simulate_bell_batch(spec, 0.3, DriftModel{}, 10000, 6);
  EXPECT_NE(a[0].zeta, c[0].zeta);
}

TEST(Simulate, ProjectionsMatchFullRecords) {
  const auto spec = ProcessSpec::three_peak(ComplexVec::filled(4, {0.3, 0.3}), 0.3, 0.25);
  DriftModel drift;
  drift.affine = Affine2::rotation(0.1);
  const auto recs = simulate_bell_batch(spec, 0.2, drift, 9000, 7);
  const std::vector<ComplexVec> dirs = {ComplexVec::filled(4, {1.0, 1.0}),
                                        ComplexVec{{0.1, 0}, {0, 2}, {1, 1}, {-1, 0.5}}};
  const auto proj = simulate_projections(spec, 0.2, drift, 9000, 7, dirs);
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
      ASSERT_EQ(proj[k][i], im_inner(recs[i].zeta, dirs[k]));
    }
  }
}

TEST(Pilots, NoiselessValuesAndIndexing) {
  const auto recs = simulate_bell_batch(ProcessSpec::gaussian(2, 0.3), 0.0, DriftModel{}, 10, 8);
  const auto out = inject_pilots(recs, 3, 10.0, 1, kInf, DriftModel{});
  int pilots = 0;
  std::int64_t next = 10;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if ((i + 1) % 3 == 0) {
      ASSERT_NE(out[i].pilot_tag, PilotTag::kNone);
      const Complex expect = pilots % 2 == 0 ? Complex(10, 0) : Complex(0, 10);
      EXPECT_EQ(out[i].zeta, ComplexVec::filled(2, expect));
      EXPECT_EQ(out[i].sample_index, next++);
      ++pilots;
    } else {
      EXPECT_EQ(out[i].pilot_tag, PilotTag::kNone);
    }
  }
  EXPECT_EQ(out.size() - pilots, 10u);
}

TEST(Pilots, RotationDriftMean) {
  const double th = 10.0 * M_PI / 180.0;
  DriftModel drift;
  drift.affine = Affine2::rotation(th);
  const auto recs = simulate_bell_batch(ProcessSpec::gaussian(1, 0.3), 0.0, drift, 20000, 9);
  const auto out = inject_pilots(recs, 2, 10.0, 2, 0.0, drift);
  Complex s;
  int n = 0;
  for (const auto& r : out) {
    if (r.pilot_tag == PilotTag::kPilotX) {
      s += r.zeta[0];
      ++n;
    }
  }
  EXPECT_EQ(n, 10000);
  const Complex mean = s / static_cast<double>(n);
  EXPECT_NEAR(mean.real(), 10 * std::cos(th), 0.01 * 10);
  EXPECT_NEAR(mean.imag(), 10 * std::sin(th), 0.01 * 10);
}

TEST(Pilots, RatioForSparsePeriod) {
  const auto recs = simulate_bell_batch(ProcessSpec::gaussian(1, 0.3), 0.0, DriftModel{},
                                        998000, 10);
  const auto out = inject_pilots(recs, 500, 10.0, 3, 0.0, DriftModel{});
  std::size_t pilots = 0;
  for (const auto& r : out) pilots += r.pilot_tag != PilotTag::kNone;
  EXPECT_EQ(out.size(), 1000000u);
  EXPECT_DOUBLE_EQ(static_cast<double>(pilots) / out.size(), 0.002);
}

TEST(Pilots, Validation) {
  const auto recs = simulate_bell_batch(ProcessSpec::gaussian(1, 0.3), 0.0, DriftModel{}, 4, 1);
  EXPECT_THROW(inject_pilots(recs, 1, 10.0, 1, 0.0, DriftModel{}), InvalidInput);
  EXPECT_THROW(inject_pilots(recs, 2, 0.0, 1, 0.0, DriftModel{}), InvalidInput);
}

}  // namespace
}  // namespace cvlearn
