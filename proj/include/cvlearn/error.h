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

#ifndef CVLEARN_ERROR_H_
#define CVLEARN_ERROR_H_

#include <stdexcept>
#include <string>

namespace cvlearn {

/// Input rejected by a precondition check (dimension mismatch, out-of-range
/// parameter, empty sample set, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation has no meaning for the given process variant.
class UnsupportedVariant : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A bound or correction was requested outside the hypotheses under which it
/// holds (e.g. a lower bound with m*n < 8). The CLI maps this to exit code 3.
class Inapplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace cvlearn

#endif  // CVLEARN_ERROR_H_
