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
#include <limits>

#include <gtest/gtest.h>

#include "cvlearn/error.h"

namespace cvlearn {
namespace {

TEST(ComplexVec, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(ComplexVec(std::vector<Complex>{}), InvalidInput);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ComplexVec({Complex(1.0, nan)}), InvalidInput);
  EXPECT_THROW(ComplexVec({Complex(std::numeric_limits<double>::infinity(), 0)}),
               InvalidInput);
}

TEST(ComplexVec, NormAndScaling) {
  const ComplexVec v{{3.0, 4.0}, {0.0, -1.0}};
  EXPECT_DOUBLE_EQ(v.norm_sq(), 26.0);
  EXPECT_DOUBLE_EQ(v.scaled(2.0).norm_sq(), 104.0);
  EXPECT_EQ(v.scaled(Complex(0, 1))[0], Complex(-4.0, 3.0));
  EXPECT_EQ(-v, v.scaled(-1.0));
}

TEST(ComplexVec, InnerUsesPhysicsConvention) {
  const ComplexVec a{{0.0, 1.0}};
  const ComplexVec b{{1.0, 0.0}};
  // conj(i) * 1 = -i
  EXPECT_EQ(inner(a, b), Complex(0.0, -1.0));
  EXPECT_DOUBLE_EQ(im_inner(a, b), -1.0);
  EXPECT_DOUBLE_EQ(im_inner(b, a), 1.0);
}

TEST(ComplexVec, ImInnerMatchesPhase) {
  const ComplexVec a{{0.3, -1.2}, {2.0, 0.5}};
  const ComplexVec b{{-0.7, 0.4}, {1.1, 1.9}};
  const Complex phase = inner(a, b) - inner(b, a);
  EXPECT_NEAR(phase.real(), 0.0, 1e-15);
  EXPECT_NEAR(phase.imag(), 2.0 * im_inner(a, b), 1e-14);
}

TEST(ComplexVec, DimensionMismatchThrows) {
  const ComplexVec a{{1.0, 0.0}};
  const ComplexVec b{{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_THROW(im_inner(a, b), InvalidInput);
  EXPECT_THROW(inner(a, b), InvalidInput);
  EXPECT_THROW(a + b, InvalidInput);
}

}  // namespace
}  // namespace cvlearn
