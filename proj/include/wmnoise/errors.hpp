// Copyright 2026 The wmnoise Authors
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

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace wmnoise {

/// Out-of-domain argument (non-finite angle, gamma outside [0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix or vector that is not a valid qubit state.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The postselection probability is at or below the floor, so the
/// conditional expectation is undefined.
class VanishingPostselectionError : public std::runtime_error {
 public:
  explicit VanishingPostselectionError(double prob)
      : std::runtime_error("vanishing postselection probability: " + describe(prob)), prob_(prob) {}

  double prob() const noexcept { return prob_; }

 private:
  static std::string describe(double prob) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", prob);
    return buf;
  }

  double prob_;
};

/// Closed-form maximum evaluated at kappa = 1, g = 0 (0/0).
class SingularLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The position grid loses too much of the meter wavefunction at its edges.
class GridTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wmnoise
