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

#include "cvlearn/trace.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cvlearn/error.h"
#include "cvlearn/records_io.h"
#include "json.hpp"

namespace cvlearn {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Index positions computed from seconds are snapped to integers when they
// are integers up to rounding, so window membership does not flicker.
double snap(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < 1e-6 ? r : x;
}

double envelope(const ModeFunctionSpec& spec, double u) {
  return std::cos(kTwoPi * spec.sideband_hz * u) *
         std::exp(-0.5 * spec.envelope_kappa_rad_s * spec.envelope_kappa_rad_s * u * u);
}

// Samples j with |j - center| < half, as [first, last]; possibly out of range.
struct Window {
  long first;
  long last;
  double center;
};

Window window_at(double center, double half) {
  return Window{static_cast<long>(std::floor(center - half)) + 1,
                static_cast<long>(std::ceil(center + half)) - 1, center};
}

double half_window(const ModeFunctionSpec& spec, double dt) {
  return snap(spec.mode_duration_s / (2.0 * dt));
}

double center_index(const ModeFunctionSpec& spec, long k, double delay_s,
                    double t0, double dt) {
  return snap((static_cast<double>(k) * spec.mode_duration_s + delay_s - t0) / dt);
}

}  // namespace

void ModeFunctionSpec::validate() const {
  require(sideband_hz > 0.0 && envelope_kappa_rad_s > 0.0 && mode_duration_s > 0.0,
          "mode function parameters must be positive");
}

void TimeTrace::validate(const ModeFunctionSpec& spec) const {
  require(sample_rate_hz >= 10.0 * spec.sideband_hz,
          "sample rate must be at least 10x the sideband frequency");
  require(std::isfinite(t0_offset_s), "t0_offset_s must be finite");
  for (double s : samples) require(std::isfinite(s), "trace samples must be finite");
}

double mode_function(const ModeFunctionSpec& spec, long k, double t) {
  const double u = t - static_cast<double>(k) * spec.mode_duration_s;
  // Guard band absorbs rounding in t - k tau so edge samples stay outside.
  if (!(std::abs(u) < spec.mode_duration_s / 2.0 * (1.0 - 1e-9))) return 0.0;
  return envelope(spec, u);
}

std::vector<double> extract_quadratures(const TimeTrace& trace,
                                        const ModeFunctionSpec& spec,
                                        double delay_s, double vacuum_scale) {
  spec.validate();
  trace.validate(spec);
  require(vacuum_scale > 0.0, "vacuum_scale must be positive");
  const double dt = trace.dt();
  const double half = half_window(spec, dt);
  const long len = static_cast<long>(trace.samples.size());
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const Window w = window_at(center_index(spec, k, delay_s, trace.t0_offset_s, dt), half);
    if (w.last > len - 1) break;
    if (w.first < 0) continue;
    double num = 0.0, den = 0.0;
    for (long j = w.first; j <= w.last; ++j) {
      const double f = envelope(spec, (static_cast<double>(j) - w.center) * dt);
      num += f * trace.samples[j];
      den += f * f;
    }
    out.push_back(vacuum_scale * num / den);
  }
  if (out.empty()) {
    std::clog << "warning: trace shorter than one mode window; no quadratures\n";
  }
  return out;
}

double mode_energy(const ModeFunctionSpec& spec, double sample_rate_hz) {
  const double dt = 1.0 / sample_rate_hz;
  const Window w = window_at(0.0, half_window(spec, dt));
  double e = 0.0;
  for (long j = w.first; j <= w.last; ++j) {
    const double f = envelope(spec, static_cast<double>(j) * dt);
    e += f * f;
  }
  return e;
}

double vacuum_noise_std(const ModeFunctionSpec& spec, double sample_rate_hz) {
  return std::sqrt(0.5 * mode_energy(spec, sample_rate_hz));
}

double vacuum_scale_from(std::span<const double> q) {
  require(q.size() >= 2, "vacuum calibration needs at least two quadratures");
  double m = 0.0;
  for (double x : q) m += x;
  m /= static_cast<double>(q.size());
  double v = 0.0;
  for (double x : q) v += (x - m) * (x - m);
  v /= static_cast<double>(q.size() - 1);
  require(v > 0.0, "vacuum segment has zero variance");
  return std::sqrt(0.5 / v);
}

TimeTrace synth_trace(std::span<const Complex> displacements, Quadrature which,
                      const ModeFunctionSpec& spec, double noise_std,
                      double delay_s, const Affine2& crosstalk, Engine& rng,
                      double sample_rate_hz) {
  spec.validate();
  require(noise_std >= 0.0, "noise_std must be nonnegative");
  require(delay_s >= 0.0, "delay must be nonnegative");
  TimeTrace trace;
  trace.sample_rate_hz = sample_rate_hz;
  trace.t0_offset_s = -spec.mode_duration_s / 2.0;
  const double dt = trace.dt();
  const double count = static_cast<double>(displacements.size());
  const auto len = static_cast<std::size_t>(
      std::llround((count * spec.mode_duration_s + delay_s) / dt)) + 1;
  trace.samples.assign(len, 0.0);
  const double half = half_window(spec, dt);
  for (std::size_t k = 0; k < displacements.size(); ++k) {
    const Complex mixed = crosstalk.apply(displacements[k]);
    const double amp = which == Quadrature::kX ? mixed.real() : mixed.imag();
    const Window w = window_at(
        center_index(spec, static_cast<long>(k), delay_s, trace.t0_offset_s, dt), half);
    for (long j = std::max(0L, w.first);
         j <= w.last && j < static_cast<long>(len); ++j) {
      trace.samples[j] += amp * envelope(spec, (static_cast<double>(j) - w.center) * dt);
    }
  }
  for (double& s : trace.samples) s += noise_std * standard_normal(rng);
  trace.validate(spec);
  return trace;
}

double estimate_delay(const TimeTrace& trace, const ModeFunctionSpec& spec) {
  spec.validate();
  trace.validate(spec);
  const auto& q = trace.samples;
  require(!q.empty(), "empty trace");
  bool flat = true;
  for (double s : q) flat = flat && s == q.front();
  if (flat) throw InvalidInput("flat trace: no correlation peak to locate");

  const double dt = trace.dt();
  const double half = half_window(spec, dt);
  const long c0 = std::lround(-trace.t0_offset_s / dt);
  const Window w = window_at(0.0, half);
  std::vector<double> tmpl;
  for (long m = w.first; m <= w.last; ++m) {
    tmpl.push_back(envelope(spec, static_cast<double>(m) * dt));
  }
  const long len = static_cast<long>(q.size());
  long best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (long lag = -c0; lag <= len - 1 - c0; ++lag) {
    double corr = 0.0;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      const long j = c0 + lag + w.first + static_cast<long>(i);
      if (j >= 0 && j < len) corr += tmpl[i] * q[j];
    }
    if (corr > best) {
      best = corr;
      best_lag = lag;
    }
  }
  return static_cast<double>(best_lag) * dt;
}

namespace {

struct Slopes {
  double x;
  double p;
};

Slopes fit_slopes(std::span<const CrosstalkSample> sweep, const char* name) {
  require(sweep.size() >= 2, std::string(name) + " sweep needs at least two points");
  double ma = 0.0, mx = 0.0, mp = 0.0;
  for (const auto& s : sweep) {
    ma += s.amplitude;
    mx += s.x;
    mp += s.p;
  }
  const double n = static_cast<double>(sweep.size());
  ma /= n;
  mx /= n;
  mp /= n;
  double saa = 0.0, sax = 0.0, sap = 0.0;
  for (const auto& s : sweep) {
    const double da = s.amplitude - ma;
    saa += da * da;
    sax += da * (s.x - mx);
    sap += da * (s.p - mp);
  }
  if (!(saa > 0.0)) {
    throw InvalidInput(std::string(name) +
                       " sweep is degenerate: needs two distinct amplitudes");
  }
  return Slopes{sax / saa, sap / saa};
}

}  // namespace

Affine2 calibrate_crosstalk(std::span<const CrosstalkSample> im_sweep,
                            std::span<const CrosstalkSample> pm_sweep) {
  const Slopes im = fit_slopes(im_sweep, "IM");
  const Slopes pm = fit_slopes(pm_sweep, "PM");
  return Affine2::from_rows(im.x, pm.x, im.p, pm.p);
}

Complex correct_command(const Affine2& crosstalk, Complex target) {
  return crosstalk.inverse().apply(target);
}

void write_trace(std::ostream& out, const TimeTrace& trace) {
  nlohmann::ordered_json h;
  h["sample_rate_hz"] = trace.sample_rate_hz;
  h["t0_offset_s"] = trace.t0_offset_s;
  h["length"] = trace.samples.size();
  out << h.dump() << '\n';
  for (double s : trace.samples) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(s);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    out.write(bytes, 8);
  }
  require(static_cast<bool>(out), "failed to write trace");
}

void write_trace(const std::string& path, const TimeTrace& trace) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), "cannot open " + path + " for writing");
  write_trace(f, trace);
}

TimeTrace read_trace(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "trace file has no header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad trace header: ") + e.what());
  }
  TimeTrace t;
  t.sample_rate_hz = h.at("sample_rate_hz").get<double>();
  t.t0_offset_s = h.value("t0_offset_s", 0.0);
  const auto length = h.at("length").get<std::size_t>();
  t.samples.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    require(in.gcount() == 8, "trace payload shorter than declared length");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    t.samples[i] = std::bit_cast<double>(bits);
  }
  return t;
}

TimeTrace read_trace(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(static_cast<bool>(f), "cannot open " + path);
  return read_trace(f);
}

void write_trace_csv(std::ostream& out, const TimeTrace& trace) {
  out << "t_s,q\n";
  for (std::size_t j = 0; j < trace.samples.size(); ++j) {
    out << format_double(trace.t0_offset_s + static_cast<double>(j) * trace.dt())
        << ',' << format_double(trace.samples[j]) << '\n';
  }
}

TimeTrace read_trace_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line == "t_s,q",
          "trace CSV must start with header t_s,q");
  std::vector<double> times;
  TimeTrace t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "malformed trace CSV row: " + line);
    times.push_back(parse_double(line.substr(0, comma)));
    t.samples.push_back(parse_double(line.substr(comma + 1)));
  }
  require(times.size() >= 2, "trace CSV needs at least two rows");
  t.t0_offset_s = times.front();
  t.sample_rate_hz = static_cast<double>(times.size() - 1) / (times.back() - times.front());
  return t;
}

}  // namespace cvlearn
