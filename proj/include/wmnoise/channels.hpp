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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wmnoise/errors.hpp"
#include "wmnoise/qubit.hpp"

namespace wmnoise {

enum class ChannelKind { depolarizing, phase_damping, amplitude_damping };

inline std::string_view channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::depolarizing:
      return "depolarizing";
    case ChannelKind::phase_damping:
      return "phase-damping";
    case ChannelKind::amplitude_damping:
      return "amplitude-damping";
  }
  return "unknown";
}

/// Single-qubit noise channel of strength gamma with its Kraus operators.
struct KrausChannel {
  ChannelKind kind = ChannelKind::depolarizing;
  double gamma = 0.0;
  std::vector<Eigen::Matrix2cd> operators;

  /// sum_k E_k^dagger E_k; the identity for a trace-preserving channel.
  Eigen::Matrix2cd completeness() const {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& e : operators) sum += e.adjoint() * e;
    return sum;
  }
};

namespace detail {

inline void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("noise strength gamma must lie in [0, 1]");
  }
}

inline Eigen::Matrix2cd kraus_sum(const std::vector<Eigen::Matrix2cd>& ops, const Eigen::Matrix2cd& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (const auto& e : ops) out += e * rho * e.adjoint();
  return out;
}

}  // namespace detail

/// rho -> gamma I/2 + (1 - gamma) rho. The stored operators are the
/// equivalent Pauli-twirl Kraus set; apply() uses the convex form.
inline KrausChannel depolarizing(double gamma) {
  detail::check_gamma(gamma);
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, complex(0, -1), complex(0, 1), 0;
  z << 1, 0, 0, -1;
  double a = std::sqrt(1.0 - 0.75 * gamma);
  double b = std::sqrt(gamma / 4.0);
  return {ChannelKind::depolarizing, gamma, {a * Eigen::Matrix2cd::Identity(), b * x, b * y, b * z}};
}

/// Dephasing that scales the coherences by (1 - gamma).
///
/// E0 = diag(1, 1 - gamma), E1 = diag(0, sqrt(1 - (1 - gamma)^2)).
inline KrausChannel phase_damping(double gamma) {
  detail::check_gamma(gamma);
  Eigen::Matrix2cd e0 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd e1 = Eigen::Matrix2cd::Zero();
  e0(0, 0) = 1.0;
  e0(1, 1) = 1.0 - gamma;
  e1(1, 1) = std::sqrt(gamma * (2.0 - gamma));
  return {ChannelKind::phase_damping, gamma, {e0, e1}};
}

/// Decay toward |0>: E0 = diag(1, sqrt(1 - gamma)), E1 = sqrt(gamma)|0><1|.
inline KrausChannel amplitude_damping(double gamma) {
  detail::check_gamma(gamma);
  Eigen::Matrix2cd e0 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd e1 = Eigen::Matrix2cd::Zero();
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  e1(0, 1) = std::sqrt(gamma);
  return {ChannelKind::amplitude_damping, gamma, {e0, e1}};
}

inline KrausChannel make_channel(ChannelKind kind, double gamma) {
  switch (kind) {
    case ChannelKind::depolarizing:
      return depolarizing(gamma);
    case ChannelKind::phase_damping:
      return phase_damping(gamma);
    case ChannelKind::amplitude_damping:
      return amplitude_damping(gamma);
  }
  throw DomainError("unknown channel kind");
}

inline QubitDensity apply(const KrausChannel& channel, const QubitDensity& rho) {
  if (channel.kind == ChannelKind::depolarizing) {
    return QubitDensity::from_matrix(channel.gamma * Eigen::Matrix2cd::Identity() / 2.0 +
                                     (1.0 - channel.gamma) * rho.matrix());
  }
  Eigen::Matrix2cd out = detail::kraus_sum(channel.operators, rho.matrix());
  // Kraus sums of Hermitian inputs are Hermitian up to rounding; pin it.
  out = (out + out.adjoint()).eval() / 2.0;
  return QubitDensity::from_matrix(out);
}

inline QubitDensity apply(const KrausChannel& channel, const PureQubit& psi) {
  return apply(channel, psi.density());
}

/// Closed-form dephasing map: populations fixed, coherences times (1 - gamma).
inline QubitDensity dephase(const QubitDensity& rho, double gamma) {
  detail::check_gamma(gamma);
  Eigen::Matrix2cd m = rho.matrix();
  m(0, 1) *= 1.0 - gamma;
  m(1, 0) *= 1.0 - gamma;
  return QubitDensity::from_matrix(m);
}

}  // namespace wmnoise
