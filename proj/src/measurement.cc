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

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvlearn/error.h"
#include "cvlearn/parallel.h"

namespace cvlearn {

void SqueezingSpec::validate() const {
  require(!std::isnan(squeezing_db) && squeezing_db >= 0.0,
          "squeezing_db must be nonnegative");
  require(std::isfinite(transmissivity) && transmissivity > 0.0 &&
              transmissivity <= 1.0,
          "transmissivity must lie in (0, 1]");
}

double SqueezingSpec::raw_noise_factor() const {
  return std::pow(10.0, -squeezing_db / 10.0);
}

double effective_squeezing(const SqueezingSpec& squeezing) {
  squeezing.validate();
  const double t = squeezing.transmissivity;
  const double total = squeezing.raw_noise_factor() + (1.0 - t) / t;
  if (total <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.0 - 0.5 * std::log(total);
}

double noise_factor(double r_eff) { return std::exp(-2.0 * r_eff); }

double squeezing_db_for(double r_eff) {
  return 10.0 * 2.0 * r_eff / std::log(10.0);
}

Affine2 Affine2::rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return from_rows(c, -s, s, c);
}

Affine2 Affine2::inverse() const {
  const double d = det();
  require(d != 0.0 && std::isfinite(d), "affine matrix is singular");
  return from_rows(m[3] / d, -m[1] / d, -m[2] / d, m[0] / d);
}

void DriftModel::validate() const {
  for (double v : affine.m) {
    require(std::isfinite(v), "drift matrix entries must be finite");
  }
  require(std::abs(affine.det()) > 0.0, "drift matrix must be invertible");
  require(std::isfinite(noise_scale) && noise_scale >= 0.0,
          "noise_scale must be nonnegative");
}

std::string to_string(PilotTag tag) {
  switch (tag) {
    case PilotTag::kNone:
      return "none";
    case PilotTag::kPilotX:
      return "pilot_x";
    case PilotTag::kPilotP:
      return "pilot_p";
  }
  return "none";
}

PilotTag pilot_tag_from_string(const std::string& s) {
  if (s == "none" || s.empty()) return PilotTag::kNone;
  if (s == "pilot_x") return PilotTag::kPilotX;
  if (s == "pilot_p") return PilotTag::kPilotP;
  throw InvalidInput("unknown pilot tag '" + s + "'");
}

namespace {

// Applies drift and Bell noise in place: z <- A z + sd * (nu_r + i nu_i).
void distort(std::span<Complex> z, const Affine2& a, double sd, Engine& rng) {
  for (auto& v : z) {
    const Complex d = a.apply(v);
    const double nr = standard_normal(rng);
    const double ni = standard_normal(rng);
    v = Complex(d.real() + sd * nr, d.imag() + sd * ni);
  }
}

double noise_sd(double r_eff, const DriftModel& drift) {
  require(!std::isnan(r_eff), "r_eff must not be NaN");
  return std::sqrt(noise_factor(r_eff) / 2.0 * drift.noise_scale);
}

// Runs the simulation law chunk by chunk and hands each finished record to
// sink(index, zeta). Sinks must only touch per-index state.
template <class Sink>
void simulate_chunks(const ProcessSpec& spec, double r_eff,
                     const DriftModel& drift, std::size_t count,
                     std::uint64_t seed, Sink&& sink) {
  drift.validate();
  const double sd = noise_sd(r_eff, drift);
  const std::size_t n = spec.modes();
  const std::size_t chunks = (count + kSimulationChunk - 1) / kSimulationChunk;
  parallel_for(chunks, [&](std::size_t c) {
    Engine rng = make_stream(seed, StreamSalt::kSimulate, c);
    std::vector<Complex> buf(n);
    const std::size_t begin = c * kSimulationChunk;
    const std::size_t end = std::min(count, begin + kSimulationChunk);
    for (std::size_t i = begin; i < end; ++i) {
      sample_displacement_into(spec, rng, buf);
      distort(buf, drift.affine, sd, rng);
      sink(i, std::span<const Complex>(buf));
    }
  });
}

}  // namespace

std::vector<BellRecord> simulate_bell_batch(const ProcessSpec& spec,
                                            double r_eff,
                                            const DriftModel& drift,
                                            std::size_t count,
                                            std::uint64_t seed) {
  require(count >= 1, "simulate_bell_batch needs N >= 1");
  std::vector<BellRecord> out(count);
  simulate_chunks(spec, r_eff, drift, count, seed,
                  [&](std::size_t i, std::span<const Complex> z) {
                    out[i].zeta = ComplexVec(std::vector<Complex>(z.begin(), z.end()));
                    out[i].sample_index = static_cast<std::int64_t>(i);
                  });
  return out;
}

std::vector<BellRecord> simulate_bell_batch(const ProcessSpec& spec,
                                            const SqueezingSpec& squeezing,
                                            const DriftModel& drift,
                                            std::size_t count,
                                            std::uint64_t seed) {
  return simulate_bell_batch(spec, effective_squeezing(squeezing), drift, count,
                             seed);
}

std::vector<std::vector<double>> simulate_projections(
    const ProcessSpec& spec, double r_eff, const DriftModel& drift,
    std::size_t count, std::uint64_t seed,
    std::span<const ComplexVec> directions) {
  require(count >= 1, "simulate_projections needs N >= 1");
  for (const auto& d : directions) {
    require(d.size() == spec.modes(), "direction length must equal mode count");
  }
  std::vector<std::vector<double>> out(directions.size(),
                                       std::vector<double>(count));
  simulate_chunks(spec, r_eff, drift, count, seed,
                  [&](std::size_t i, std::span<const Complex> z) {
                    for (std::size_t k = 0; k < directions.size(); ++k) {
                      out[k][i] = im_inner(z, directions[k].view());
                    }
                  });
  return out;
}

std::vector<BellRecord> inject_pilots(std::span<const BellRecord> records,
                                      std::size_t period, double amplitude,
                                      std::uint64_t seed, double r_eff,
                                      const DriftModel& drift) {
  require(period >= 2, "pilot period must be at least 2");
  require(std::isfinite(amplitude) && amplitude > 0.0,
          "pilot amplitude must be positive");
  require(!records.empty(), "inject_pilots needs records");
  drift.validate();
  const std::size_t n = records.front().zeta.size();
  const double sd = noise_sd(r_eff, drift);

  std::int64_t next_index = 0;
  for (const auto& r : records) {
    next_index = std::max(next_index, r.sample_index + 1);
  }

  Engine rng = make_stream(seed, StreamSalt::kPilot, 0);
  std::vector<BellRecord> out;
  out.reserve(records.size() + records.size() / (period - 1) + 1);
  std::size_t data = 0;
  std::size_t pilots = 0;
  // A trailing pilot closes the last full period.
  while (data < records.size() || (out.size() + 1) % period == 0) {
    if ((out.size() + 1) % period == 0) {
      const bool x_pilot = pilots % 2 == 0;
      const Complex injected =
          x_pilot ? Complex(amplitude, 0.0) : Complex(0.0, amplitude);
      std::vector<Complex> z(n, injected);
      distort(z, drift.affine, sd, rng);
      out.push_back(BellRecord{ComplexVec(std::move(z)), next_index++,
                               x_pilot ? PilotTag::kPilotX : PilotTag::kPilotP});
      ++pilots;
    } else {
      out.push_back(records[data++]);
    }
  }
  return out;
}

}  // namespace cvlearn
