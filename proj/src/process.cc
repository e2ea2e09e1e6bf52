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
#include <set>

#include "cvlearn/error.h"

namespace cvlearn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_sigma(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, "sigma must be positive");
}

void check_dims(const ProcessSpec& spec, std::size_t n) {
  if (spec.modes() != n) {
    throw InvalidInput("dimension mismatch: process has " +
                       std::to_string(spec.modes()) + " modes, argument has " +
                       std::to_string(n));
  }
}

// e^{-|beta - shift|^2 / (2 sigma^2)} without materialising beta - shift.
double gaussian_peak(const ComplexVec& beta, const ComplexVec* shift,
                     double sign, double sigma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const Complex d = shift ? beta[i] - sign * (*shift)[i] : beta[i];
    d2 += std::norm(d);
  }
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

}  // namespace

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::kThreePeak:
      return "three_peak";
    case ProcessKind::kGaussian:
      return "gaussian";
    case ProcessKind::kFixed:
      return "fixed";
  }
  return "unknown";
}

ProcessSpec ProcessSpec::three_peak(ComplexVec gamma, double sigma,
                                    double epsilon0) {
  require(!gamma.empty(), "three-peak gamma must be non-empty");
  check_sigma(sigma);
  require(std::isfinite(epsilon0) && epsilon0 >= 0.0 && epsilon0 <= 0.25,
          "epsilon0 must lie in [0, 0.25]");
  return ProcessSpec(ThreePeakSpec{std::move(gamma), sigma, epsilon0});
}

ProcessSpec ProcessSpec::gaussian(std::size_t n, double sigma) {
  require(n >= 1, "mode count must be at least 1");
  check_sigma(sigma);
  return ProcessSpec(GaussianSpec{n, sigma});
}

ProcessSpec ProcessSpec::fixed(ComplexVec alpha0) {
  require(!alpha0.empty(), "fixed displacement must be non-empty");
  return ProcessSpec(FixedSpec{std::move(alpha0)});
}

std::size_t ProcessSpec::modes() const {
  return std::visit(Overloaded{
                        [](const ThreePeakSpec& s) { return s.gamma.size(); },
                        [](const GaussianSpec& s) { return s.n; },
                        [](const FixedSpec& s) { return s.alpha0.size(); },
                    },
                    v_);
}

ProcessKind ProcessSpec::kind() const {
  return static_cast<ProcessKind>(v_.index());
}

bool operator==(const ProcessSpec& a, const ProcessSpec& b) {
  if (a.v_.index() != b.v_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const ThreePeakSpec& s) {
            const auto& t = std::get<ThreePeakSpec>(b.v_);
            return s.gamma == t.gamma && s.sigma == t.sigma &&
                   s.epsilon0 == t.epsilon0;
          },
          [&](const GaussianSpec& s) {
            const auto& t = std::get<GaussianSpec>(b.v_);
            return s.n == t.n && s.sigma == t.sigma;
          },
          [&](const FixedSpec& s) {
            return s.alpha0 == std::get<FixedSpec>(b.v_).alpha0;
          },
      },
      a.v_);
}

Complex char_fn(const ProcessSpec& spec, const ComplexVec& beta) {
  check_dims(spec, beta.size());
  return std::visit(
      Overloaded{
          [&](const ThreePeakSpec& s) {
            const double central = gaussian_peak(beta, nullptr, 0.0, s.sigma);
            const double minus = gaussian_peak(beta, &s.gamma, 1.0, s.sigma);
            const double plus = gaussian_peak(beta, &s.gamma, -1.0, s.sigma);
            // The side terms cancel exactly at beta = 0 since minus == plus.
            return Complex(central, 2.0 * s.epsilon0 * (minus - plus));
          },
          [&](const GaussianSpec& s) {
            return Complex(gaussian_peak(beta, nullptr, 0.0, s.sigma), 0.0);
          },
          [&](const FixedSpec& s) {
            const double phase = 2.0 * im_inner(s.alpha0, beta);
            return Complex(std::cos(phase), std::sin(phase));
          },
      },
      spec.variant());
}

double pdf_weight(const ProcessSpec& spec, const ComplexVec& alpha) {
  check_dims(spec, alpha.size());
  return std::visit(
      Overloaded{
          [&](const ThreePeakSpec& s) {
            const double env =
                std::exp(-2.0 * s.sigma * s.sigma * alpha.norm_sq());
            const double mod =
                1.0 + 4.0 * s.epsilon0 * std::sin(2.0 * im_inner(alpha, s.gamma));
            return env * mod;
          },
          [&](const GaussianSpec& s) {
            return std::exp(-2.0 * s.sigma * s.sigma * alpha.norm_sq());
          },
          [](const FixedSpec&) -> double {
            throw UnsupportedVariant(
                "pdf_weight: a fixed displacement has a delta density");
          },
      },
      spec.variant());
}

std::size_t sample_displacement_into(const ProcessSpec& spec, Engine& rng,
                                     std::span<Complex> out) {
  check_dims(spec, out.size());
  return std::visit(
      Overloaded{
          [&](const ThreePeakSpec& s) {
            const double sd = 1.0 / (2.0 * s.sigma);
            std::size_t proposals = 0;
            for (;;) {
              ++proposals;
              for (auto& z : out) {
                const double re = sd * standard_normal(rng);
                const double im = sd * standard_normal(rng);
                z = Complex(re, im);
              }
              const double accept =
                  0.5 * (1.0 + 4.0 * s.epsilon0 *
                                   std::sin(2.0 * im_inner(out, s.gamma.view())));
              if (uniform01(rng) < accept) return proposals;
            }
          },
          [&](const GaussianSpec& s) {
            const double sd = 1.0 / (2.0 * s.sigma);
            for (auto& z : out) {
              const double re = sd * standard_normal(rng);
              const double im = sd * standard_normal(rng);
              z = Complex(re, im);
            }
            return std::size_t{1};
          },
          [&](const FixedSpec& s) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.alpha0[i];
            return std::size_t{1};
          },
      },
      spec.variant());
}

ComplexVec sample_displacement(const ProcessSpec& spec, Engine& rng) {
  std::vector<Complex> out(spec.modes());
  sample_displacement_into(spec, rng, out);
  return ComplexVec(std::move(out));
}

ComplexVec draw_gamma(std::size_t n, double sigma_gamma_sq, Engine& rng) {
  require(n >= 1, "mode count must be at least 1");
  require(std::isfinite(sigma_gamma_sq) && sigma_gamma_sq > 0.0,
          "sigma_gamma_sq must be positive");
  const double sd = std::sqrt(sigma_gamma_sq);
  std::vector<Complex> g(n);
  for (auto& z : g) {
    const double re = sd * standard_normal(rng);
    const double im = sd * standard_normal(rng);
    z = Complex(re, im);
  }
  return ComplexVec(std::move(g));
}

Complex empirical_char_fn(std::span<const ComplexVec> samples,
                          const ComplexVec& beta) {
  require(!samples.empty(), "empirical_char_fn needs at least one sample");
  double re = 0.0;
  double im = 0.0;
  for (const ComplexVec& a : samples) {
    const double phase = 2.0 * im_inner(a, beta);
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double m = static_cast<double>(samples.size());
  return {re / m, im / m};
}

nlohmann::json complex_vec_to_json(const ComplexVec& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Complex& z : v.view()) arr.push_back({z.real(), z.imag()});
  return arr;
}

ComplexVec complex_vec_from_json(const nlohmann::json& j) {
  require(j.is_array(), "complex vector must be an array of [re, im] pairs");
  std::vector<Complex> c;
  c.reserve(j.size());
  for (const auto& e : j) {
    require(e.is_array() && e.size() == 2 && e[0].is_number() &&
                e[1].is_number(),
            "complex entries must be [re, im] number pairs");
    c.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexVec(std::move(c));
}

nlohmann::json to_json(const ProcessSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(spec.kind());
  j["n"] = spec.modes();
  std::visit(Overloaded{
                 [&](const ThreePeakSpec& s) {
                   j["sigma"] = s.sigma;
                   j["epsilon0"] = s.epsilon0;
                   j["gamma"] = complex_vec_to_json(s.gamma);
                 },
                 [&](const GaussianSpec& s) { j["sigma"] = s.sigma; },
                 [&](const FixedSpec& s) {
                   j["alpha0"] = complex_vec_to_json(s.alpha0);
                 },
             },
             spec.variant());
  return nlohmann::json(j);
}

ProcessSpec process_from_json(const nlohmann::json& j) {
  require(j.is_object(), "process spec must be a JSON object");
  require(j.contains("kind") && j["kind"].is_string(),
          "process spec needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  std::set<std::string> allowed;
  if (kind == "three_peak") {
    allowed = {"kind", "n", "sigma", "epsilon0", "gamma"};
  } else if (kind == "gaussian") {
    allowed = {"kind", "n", "sigma"};
  } else if (kind == "fixed") {
    allowed = {"kind", "n", "alpha0"};
  } else {
    throw InvalidInput("unknown process kind '" + kind + "'");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw InvalidInput("unknown field '" + it.key() + "' for process kind '" +
                         kind + "'");
    }
  }
  auto number = [&](const char* key) {
    require(j.contains(key) && j[key].is_number(),
            std::string("process spec needs numeric '") + key + "'");
    return j[key].get<double>();
  };

  ProcessSpec spec = [&] {
    if (kind == "three_peak") {
      require(j.contains("gamma"), "three_peak spec needs 'gamma'");
      return ProcessSpec::three_peak(complex_vec_from_json(j["gamma"]),
                                     number("sigma"), number("epsilon0"));
    }
    if (kind == "gaussian") {
      require(j.contains("n") && j["n"].is_number_unsigned(),
              "gaussian spec needs a positive integer 'n'");
      return ProcessSpec::gaussian(j["n"].get<std::size_t>(), number("sigma"));
    }
    require(j.contains("alpha0"), "fixed spec needs 'alpha0'");
    return ProcessSpec::fixed(complex_vec_from_json(j["alpha0"]));
  }();
  if (j.contains("n")) {
    require(j["n"].is_number_unsigned() &&
                j["n"].get<std::size_t>() == spec.modes(),
            "'n' is inconsistent with the vector lengths");
  }
  return spec;
}

}  // namespace cvlearn
