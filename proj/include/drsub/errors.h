// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRSUB_ERRORS_H_
#define DRSUB_ERRORS_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace drsub {

using Vector = std::vector<double>;

// Malformed or out-of-contract user input (CLI exit code 1).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Problem exceeds an exact-enumeration size limit.
class CapacityError : public InputError {
 public:
  using InputError::InputError;
};

// Incompatible combination of family, body and schedule.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// Schedule outside the admissible class.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

// A proven invariant failed at runtime (CLI exit code 2).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace internal {

inline void CheckDimension(std::size_t expected, std::size_t got,
                           const char* what) {
  if (expected != got) {
    throw InputError(std::string(what) + ": dimension mismatch (expected " +
                     std::to_string(expected) + ", got " +
                     std::to_string(got) + ")");
  }
}

inline void CheckFinite(std::span<const double> v, const char* what) {
  for (double e : v) {
    if (!std::isfinite(e)) {
      throw InputError(std::string(what) + ": non-finite entry");
    }
  }
}

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double SquaredNorm(std::span<const double> a) { return Dot(a, a); }

inline double InfNorm(std::span<const double> a) {
  double m = 0.0;
  for (double e : a) m = std::max(m, std::abs(e));
  return m;
}

inline double SquaredDistance(std::span<const double> a,
                              std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace internal
}  // namespace drsub

#endif  // DRSUB_ERRORS_H_
