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

#ifndef CVLEARN_COMPLEX_VEC_H_
#define CVLEARN_COMPLEX_VEC_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cvlearn {

using Complex = std::complex<double>;

/// An n-mode phase-space amplitude (displacement alpha, dual point beta, peak
/// location gamma). Always non-empty with finite components.
class ComplexVec {
 public:
  ComplexVec() = default;
  explicit ComplexVec(std::vector<Complex> components);
  ComplexVec(std::initializer_list<Complex> components);

  static ComplexVec filled(std::size_t n, Complex value);
  static ComplexVec zeros(std::size_t n) { return filled(n, Complex{}); }

  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }
  const Complex& operator[](std::size_t i) const { return c_[i]; }
  std::span<const Complex> view() const { return c_; }
  const std::vector<Complex>& components() const { return c_; }

  double norm_sq() const;
  double norm() const;

  ComplexVec scaled(double s) const;
  ComplexVec scaled(Complex s) const;
  ComplexVec operator-() const { return scaled(-1.0); }

  friend bool operator==(const ComplexVec&, const ComplexVec&) = default;

 private:
  std::vector<Complex> c_;
};

/// a^dagger b = sum_j conj(a_j) b_j.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
inline Complex inner(const ComplexVec& a, const ComplexVec& b) {
  return inner(a.view(), b.view());
}

/// Im(a^dagger b) = sum_j (Re a_j Im b_j - Im a_j Re b_j). The phase
/// a^dagger b - b^dagger a equals 2i times this value.
double im_inner(std::span<const Complex> a, std::span<const Complex> b);
inline double im_inner(const ComplexVec& a, const ComplexVec& b) {
  return im_inner(a.view(), b.view());
}

ComplexVec operator+(const ComplexVec& a, const ComplexVec& b);
ComplexVec operator-(const ComplexVec& a, const ComplexVec& b);

}  // namespace cvlearn

#endif  // CVLEARN_COMPLEX_VEC_H_
