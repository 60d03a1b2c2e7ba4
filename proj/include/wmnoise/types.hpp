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

#include <cmath>
#include <optional>

#include "wmnoise/errors.hpp"
#include "wmnoise/qubit.hpp"

namespace wmnoise {

/// States whose postselection probability is at or below this floor have
/// no meaningful conditional readout.
inline constexpr double kProbFloor = 1e-12;

/// Pre/postselection parameters. The preselection is
/// pure_state(theta1, phi0) and the postselection pure_state(theta2, 0);
/// every readout depends on the azimuths only through phi0 = phi1 - phi2.
struct PPSPoint {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi0 = 0.0;

  PureQubit preselection() const { return pure_state(theta1, phi0); }
  PureQubit postselection() const { return pure_state(theta2, 0.0); }
};

/// Minimum-uncertainty Gaussian pointer centred at q = p = 0 (hbar = 1).
class GaussianMeter {
 public:
  explicit GaussianMeter(double delta = 1.0) : delta_(delta) {
    if (!(std::isfinite(delta) && delta > 0.0)) throw DomainError("meter width delta must be > 0");
  }

  double delta() const { return delta_; }
  double dq() const { return delta_; }
  double dp() const { return 0.5 / delta_; }

 private:
  double delta_;
};

/// Postselected pointer shifts of the Gaussian meter.
struct ShiftResult {
  double dp_shift = 0.0;
  double dq_shift = 0.0;
  double prob = 0.0;
};

/// Postselected expectation of O = |1><1| on the qubit meter.
struct QubitMeterReading {
  double reading = 0.0;
  double prob = 1.0;
};

/// A maximal |shift| or reading with the PPS attaining it.
struct MaxResult {
  double value = 0.0;
  PPSPoint argmax;
  // The sign-flipped attainment (readout -value), when one exists.
  std::optional<PPSPoint> mirror_argmax;
};

}  // namespace wmnoise
