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
#include "wmnoise/qubit.hpp"
#include "wmnoise/types.hpp"

namespace wmnoise {

namespace detail {

inline void check_coupling(double g) {
  if (!(std::isfinite(g) && g >= 0.0)) throw DomainError("coupling g must be finite and >= 0");
}

inline void check_kappa(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("coherence kappa must lie in [0, 1]");
}

}  // namespace detail

/// Shifts of the pointer momentum and position conditioned on postselecting
/// psi_f, for an arbitrary (possibly noisy) preselection rho_s.
///
/// With c = exp(-2 delta^2 g^2) and x = rho10 alpha2 conj(beta2):
///   Pro = rho00 |alpha2|^2 + rho11 |beta2|^2 + 2 c Re(x)
///   dp  = g (rho00 |alpha2|^2 - rho11 |beta2|^2) / Pro
///   dq  = 4 g delta^2 c Im(x) / Pro
inline ShiftResult gaussian_shifts(const QubitDensity& rho_s, const PureQubit& psi_f, double g,
                                   const GaussianMeter& meter, double prob_floor = kProbFloor) {
  detail::check_coupling(g);
  const double d2 = meter.delta() * meter.delta();
  const double c = std::exp(-2.0 * d2 * g * g);
  const double a2 = std::norm(psi_f.alpha());
  const double b2 = std::norm(psi_f.beta());
  const complex x = rho_s.rho10() * psi_f.alpha() * std::conj(psi_f.beta());

  const double p0 = rho_s.rho00() * a2;
  const double p1 = rho_s.rho11() * b2;
  const double prob = p0 + p1 + 2.0 * c * x.real();
  if (!(prob > prob_floor)) throw VanishingPostselectionError(prob);
  return {g * (p0 - p1) / prob, 4.0 * g * d2 * c * x.imag() / prob, prob};
}

struct GaussianMaxima {
  MaxResult dp;
  MaxResult dq;
};

/// Largest |dp| and |dq| over all PPS for a preselection whose coherence
/// is scaled by kappa: the Bloch modulus for depolarized states, 1 - gamma
/// for both depolarizing and dephasing noise.
///
/// The dp maximum sits at theta1 = pi/2, cos(theta2) = sqrt(1 - a^2),
/// phi0 = pi with a = kappa exp(-2 delta^2 g^2); the dq maximum at
/// theta1 = theta2 = pi/2, cos(phi0) = -a.
inline GaussianMaxima gaussian_max_shifts(double kappa, double g, const GaussianMeter& meter) {
  detail::check_kappa(kappa);
  detail::check_coupling(g);
  const double d2 = meter.delta() * meter.delta();
  const double a = kappa * std::exp(-2.0 * d2 * g * g);
  // 1 - kappa^2 e^{-4 d2 g^2} without cancellation near kappa = 1, g = 0.
  const double one_minus_a2 = (1.0 - kappa * kappa) - kappa * kappa * std::expm1(-4.0 * d2 * g * g);
  if (!(one_minus_a2 > 0.0)) {
    throw SingularLimitError("maximal shifts are singular at kappa = 1, g = 0");
  }
  const double den = std::sqrt(one_minus_a2);
  constexpr double pi = std::numbers::pi;

  GaussianMaxima out;
  const double theta2 = std::atan2(a, den);
  out.dp.value = g / den;
  out.dp.argmax = {pi / 2.0, theta2, pi};
  out.dp.mirror_argmax = PPSPoint{pi / 2.0, pi - theta2, pi};

  const double phi0 = std::acos(-a);
  out.dq.value = 2.0 * g * d2 * a / den;
  out.dq.argmax = {pi / 2.0, pi / 2.0, phi0};
  out.dq.mirror_argmax = PPSPoint{pi / 2.0, pi / 2.0, 2.0 * pi - phi0};
  return out;
}

}  // namespace wmnoise
