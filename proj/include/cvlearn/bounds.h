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

#ifndef CVLEARN_BOUNDS_H_
#define CVLEARN_BOUNDS_H_

#include <string>

namespace cvlearn {

/// A bound computed in log space. `value` may overflow to +inf for extreme
/// parameters; log10 stays exact.
struct BoundValue {
  double log10 = 0.0;
  double value = 0.0;

  static BoundValue from_ln(double ln_value);
};

/// Sample count sufficient for an epsilon-accurate estimate of lambda(beta)
/// with probability 1 - delta: 8 e^{2 e^{-2 r_eff} |beta|^2} eps^{-2} ln(4/delta).
BoundValue hoeffding_upper(double r_eff, double beta_sq, double epsilon,
                           double delta);

struct ClassicalLowerBound {
  BoundValue bound;
  bool applicable = true;
  std::string note;  // why the theorem hypotheses fail, when they do
};

/// Entanglement-free lower bound on N for learning lambda up to |beta|^2 <=
/// kappa * m * n. sigma == 0 gives 0.01 eps^{-2} (1 + 1.98 kappa)^{mn}; sigma > 0
/// gives 0.01 eps^{-2} (1 + 1.98 kappa / (1 + 2 sigma^2))^{mn}, flagged
/// inapplicable when 2 sigma^2 > max{1 - 1.98 kappa,
/// 0.99 kappa (sqrt(1 + (0.99 kappa)^{-2}) - 1)} or eps > 0.24.
/// Throws Inapplicable when m * n < 8.
ClassicalLowerBound classical_lower(long m, long n, double kappa,
                                    double epsilon, double sigma);

/// Classical sample count matching success probability p_suc in the
/// hypothesis-testing game: (2P - 1)/(16 eps0^2) (1 + 1.98 kappa/(1 + 2 sigma^2))^n.
BoundValue equivalent_classical_N(double p_suc, double epsilon0, double kappa,
                                  double sigma, long n);

/// Upper bound on the success probability of any entanglement-free strategy
/// with N samples: min(1, 1/2 (1 + 16 N eps0^2 ((1 + 2s^2)/(1 + 2s^2 + 1.98 kappa))^n)).
double classical_success_bound(double N, double epsilon0, double kappa,
                               double sigma, long n);

/// The excess classical_success_bound - 1/2 evaluated without cancellation.
double classical_success_excess(double N, double epsilon0, double kappa,
                                double sigma, long n);

/// Acquisition time N * n / mode_rate in seconds.
double acquisition_time(double N, long n, double mode_rate_hz = 1e6);

/// "609 years", "3.2 hours", ... for a duration in seconds.
std::string format_duration(double seconds);

}  // namespace cvlearn

#endif  // CVLEARN_BOUNDS_H_
