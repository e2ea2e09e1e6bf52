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

#include "cvlearn/complex_vec.h"

#include <cmath>
#include <string>

#include "cvlearn/error.h"

namespace cvlearn {

namespace {

void check_components(const std::vector<Complex>& c) {
  require(!c.empty(), "ComplexVec must have at least one component");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag())) {
      throw InvalidInput("ComplexVec component " + std::to_string(i) +
                         " is not finite");
    }
  }
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a) + " vs " +
                       std::to_string(b));
  }
}

}  // namespace

ComplexVec::ComplexVec(std::vector<Complex> components)
    : c_(std::move(components)) {
  check_components(c_);
}

ComplexVec::ComplexVec(std::initializer_list<Complex> components)
    : c_(components) {
  check_components(c_);
}

ComplexVec ComplexVec::filled(std::size_t n, Complex value) {
  return ComplexVec(std::vector<Complex>(n, value));
}

double ComplexVec::norm_sq() const {
  double s = 0.0;
  for (const Complex& z : c_) s += std::norm(z);
  return s;
}

double ComplexVec::norm() const { return std::sqrt(norm_sq()); }

ComplexVec ComplexVec::scaled(double s) const {
  std::vector<Complex> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
  return ComplexVec(std::move(out));
}

ComplexVec ComplexVec::scaled(Complex s) const {
  std::vector<Complex> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
  return ComplexVec(std::move(out));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  check_same_size(a.size(), b.size());
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double im_inner(std::span<const Complex> a, std::span<const Complex> b) {
  check_same_size(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return s;
}

ComplexVec operator+(const ComplexVec& a, const ComplexVec& b) {
  check_same_size(a.size(), b.size());
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return ComplexVec(std::move(out));
}

ComplexVec operator-(const ComplexVec& a, const ComplexVec& b) {
  check_same_size(a.size(), b.size());
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return ComplexVec(std::move(out));
}

}  // namespace cvlearn
