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

#include "cvlearn/bounds.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "cvlearn/error.h"
#include "cvlearn/measurement.h"

namespace cvlearn {

namespace {

constexpr double kLn10 = 2.302585092994046;

// ln of the per-mode factor (1 + 1.98 kappa / (1 + 2 sigma^2)).
double ln_mode_gain(double kappa, double sigma) {
  return std::log1p(1.98 * kappa / (1.0 + 2.0 * sigma * sigma));
}

}  // namespace

BoundValue BoundValue::from_ln(double ln_value) {
  return BoundValue{ln_value / kLn10, std::exp(ln_value)};
}

BoundValue hoeffding_upper(double r_eff, double beta_sq, double epsilon,
                           double delta) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(beta_sq >= 0.0, "beta_sq must be nonnegative");
  const double ln = std::log(8.0) + 2.0 * noise_factor(r_eff) * beta_sq -
                    2.0 * std::log(epsilon) + std::log(std::log(4.0 / delta));
  return BoundValue::from_ln(ln);
}

ClassicalLowerBound classical_lower(long m, long n, double kappa,
                                    double epsilon, double sigma) {
  require(m >= 1 && n >= 1, "m and n must be positive");
  require(kappa >= 0.0, "kappa must be nonnegative");
  require(epsilon > 0.0, "epsilon must be positive");
  require(sigma >= 0.0, "sigma must be nonnegative");
  const long mn = m * n;
  if (mn < 8) {
    throw Inapplicable("classical lower bound requires m*n >= 8 (got " +
                       std::to_string(mn) + ")");
  }
  ClassicalLowerBound out;
  const double ln = std::log(0.01) - 2.0 * std::log(epsilon) +
                    static_cast<double>(mn) * ln_mode_gain(kappa, sigma);
  out.bound = BoundValue::from_ln(ln);
  if (epsilon > 0.24) {
    out.applicable = false;
    out.note = "epsilon > 0.24";
  }
  if (sigma > 0.0) {
    const double k = 0.99 * kappa;
    const double alt = k > 0.0 ? k * (std::sqrt(1.0 + 1.0 / (k * k)) - 1.0) : 0.0;
    const double limit = std::max(1.0 - 1.98 * kappa, alt);
    if (2.0 * sigma * sigma > limit) {
      out.applicable = false;
      if (!out.note.empty()) out.note += "; ";
      out.note += "2 sigma^2 exceeds the finite-sigma condition";
    }
  }
  return out;
}

BoundValue equivalent_classical_N(double p_suc, double epsilon0, double kappa,
                                  double sigma, long n) {
  require(p_suc >= 0.5 && p_suc <= 1.0, "P_suc must lie in [0.5, 1]");
  require(epsilon0 > 0.0, "epsilon0 must be positive");
  require(n >= 1, "n must be positive");
  const double lead = (2.0 * p_suc - 1.0) / (16.0 * epsilon0 * epsilon0);
  if (lead == 0.0) return BoundValue{-std::numeric_limits<double>::infinity(), 0.0};
  const double ln =
      std::log(lead) + static_cast<double>(n) * ln_mode_gain(kappa, sigma);
  return BoundValue::from_ln(ln);
}

double classical_success_excess(double N, double epsilon0, double kappa,
                                double sigma, long n) {
  require(N >= 0.0, "N must be nonnegative");
  require(n >= 1, "n must be positive");
  if (N == 0.0) return 0.0;
  const double ln = std::log(8.0 * N * epsilon0 * epsilon0) -
                    static_cast<double>(n) * ln_mode_gain(kappa, sigma);
  return std::min(0.5, std::exp(ln));
}

double classical_success_bound(double N, double epsilon0, double kappa,
                               double sigma, long n) {
  return 0.5 + classical_success_excess(N, epsilon0, kappa, sigma, n);
}

double acquisition_time(double N, long n, double mode_rate_hz) {
  require(N > 0.0 && n > 0 && mode_rate_hz > 0.0,
          "acquisition_time inputs must be positive");
  return N * static_cast<double>(n) / mode_rate_hz;
}

std::string format_duration(double seconds) {
  struct Unit {
    const char* name;
    double seconds;
  };
  static const Unit kUnits[] = {
      {"years", 365.25 * 86400.0}, {"days", 86400.0}, {"hours", 3600.0},
      {"minutes", 60.0},           {"seconds", 1.0},
  };
  for (const Unit& u : kUnits) {
    if (seconds >= u.seconds || u.seconds == 1.0) {
      const double v = seconds / u.seconds;
      char buf[64];
      if (v >= 1e6) {
        std::snprintf(buf, sizeof buf, "%.3g %s", v, u.name);
      } else {
        std::snprintf(buf, sizeof buf, "%.4g %s", v, u.name);
      }
      return buf;
    }
  }
  return "0 seconds";
}

}  // namespace cvlearn
