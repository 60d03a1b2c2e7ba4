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
#include <numbers>

#include "wmnoise/errors.hpp"
#include "wmnoise/gaussian_meter.hpp"
#include "wmnoise/qubit.hpp"
#include "wmnoise/types.hpp"

namespace wmnoise {

/// <O> = sin^2 g without postselection, whatever the system state.
inline double ordinary_reading(double g) {
  detail::check_coupling(g);
  const double s = std::sin(g);
  return s * s;
}

/// Reading of O = |1><1| on the qubit meter conditioned on psi_f:
///   Pro = rho00 |alpha2|^2 + rho11 |beta2|^2 + 2 cos(2g) Re(x)
///   <O> = sin^2 g (rho00 |alpha2|^2 + rho11 |beta2|^2 - 2 Re(x)) / Pro
/// with x = rho10 alpha2 conj(beta2).
inline QubitMeterReading postselected_reading(const QubitDensity& rho_s, const PureQubit& psi_f,
                                              double g, double prob_floor = kProbFloor) {
  detail::check_coupling(g);
  const double a2 = std::norm(psi_f.alpha());
  const double b2 = std::norm(psi_f.beta());
  const double re_x = (rho_s.rho10() * psi_f.alpha() * std::conj(psi_f.beta())).real();
  const double diag = rho_s.rho00() * a2 + rho_s.rho11() * b2;
  const double prob = diag + 2.0 * std::cos(2.0 * g) * re_x;
  if (!(prob > prob_floor)) throw VanishingPostselectionError(prob);
  const double s = std::sin(g);
  return {s * s * (diag - 2.0 * re_x) / prob, prob};
}

/// Maximal postselected reading for coherence kappa, attained by the
/// orthogonal pair theta1 = theta2 = pi/2, phi0 = pi.
inline MaxResult qubit_max_reading(double kappa, double g) {
  detail::check_kappa(kappa);
  detail::check_coupling(g);
  const double s2 = ordinary_reading(g);
  const double den = (1.0 - kappa) + 2.0 * kappa * s2;
  MaxResult out;
  out.value = den > 0.0 ? (1.0 + kappa) * s2 / den : 0.0;
  out.argmax = {std::numbers::pi / 2.0, std::numbers::pi / 2.0, std::numbers::pi};
  return out;
}

}  // namespace wmnoise
