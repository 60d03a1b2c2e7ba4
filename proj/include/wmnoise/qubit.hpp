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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "wmnoise/errors.hpp"

namespace wmnoise {

using complex = std::complex<double>;

/// Tolerance for algebraic identities on states.
inline constexpr double kStateTol = 1e-12;
/// Tolerance for round trips through the modulus decomposition.
inline constexpr double kRoundTripTol = 1e-10;

/// Bloch vector (rx, ry, rz) with rho = (I + r.sigma) / 2.
struct BlochVector {
  double rx = 0.0;
  double ry = 0.0;
  double rz = 0.0;

  double modulus() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }
};

class QubitDensity;

/// Normalized qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
///
/// Always canonical: theta in [0, pi], phi in [0, 2 pi), alpha real and
/// non-negative. At the poles phi is pinned to 0.
class PureQubit {
 public:
  PureQubit() = default;

  /// Canonicalizing constructor; see pure_state().
  static PureQubit from_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
      throw DomainError("pure_state: non-finite angle");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    if (theta > std::numbers::pi) {
      theta = two_pi - theta;
      phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;

    PureQubit q;
    q.theta_ = theta;
    if (theta == 0.0) {
      q.phi_ = 0.0;
      q.alpha_ = 1.0;
      q.beta_ = 0.0;
    } else if (theta == std::numbers::pi) {
      q.phi_ = 0.0;
      q.alpha_ = 0.0;
      q.beta_ = 1.0;
    } else {
      q.phi_ = phi;
      q.alpha_ = std::cos(theta / 2.0);
      q.beta_ = std::polar(std::sin(theta / 2.0), phi);
    }
    return q;
  }

  /// Builds the canonical representative of the ray through (a, b).
  static PureQubit from_amplitudes(complex a, complex b) {
    double norm = std::sqrt(std::norm(a) + std::norm(b));
    if (!std::isfinite(norm) || norm == 0.0) {
      throw InvalidStateError("pure state amplitudes must be finite and nonzero");
    }
    a /= norm;
    b /= norm;
    double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    double phi = std::abs(a) == 0.0 || std::abs(b) == 0.0 ? 0.0 : std::arg(b) - std::arg(a);
    return from_angles(theta, phi);
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  complex alpha() const { return alpha_; }
  complex beta() const { return beta_; }

  Eigen::Vector2cd vector() const { return {alpha_, beta_}; }

  BlochVector bloch() const {
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
  }

  QubitDensity density() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
  complex alpha_ = 1.0;
  complex beta_ = 0.0;
};

/// 2x2 density matrix in the eigenbasis {|0>, |1>} of the measured observable.
class QubitDensity {
 public:
  /// The maximally mixed state.
  QubitDensity() : m_(Eigen::Matrix2cd::Identity() / 2.0) {}

  /// Validates Hermiticity, unit trace and positivity to kStateTol.
  static QubitDensity from_matrix(const Eigen::Matrix2cd& m) {
    if (!m.allFinite()) throw InvalidStateError("density matrix has non-finite entries");
    if (std::abs(m(0, 1) - std::conj(m(1, 0))) > kStateTol ||
        std::abs(m(0, 0).imag()) > kStateTol || std::abs(m(1, 1).imag()) > kStateTol) {
      throw InvalidStateError("density matrix is not Hermitian");
    }
    double tr = m(0, 0).real() + m(1, 1).real();
    if (std::abs(tr - 1.0) > kStateTol) {
      throw InvalidStateError("density matrix trace " + std::to_string(tr) + " != 1");
    }
    double det = m(0, 0).real() * m(1, 1).real() - std::norm(m(1, 0));
    if (m(0, 0).real() < -kStateTol || m(1, 1).real() < -kStateTol || det < -kStateTol) {
      throw InvalidStateError("density matrix is not positive semidefinite");
    }
    QubitDensity d;
    d.m_ = m;
    return d;
  }

  double rho00() const { return m_(0, 0).real(); }
  double rho11() const { return m_(1, 1).real(); }
  complex rho01() const { return m_(0, 1); }
  complex rho10() const { return m_(1, 0); }

  const Eigen::Matrix2cd& matrix() const { return m_; }

  double trace() const { return rho00() + rho11(); }

  /// Eigenvalues in ascending order.
  Eigen::Vector2d eigenvalues() const {
    double mean = trace() / 2.0;
    double half_gap = std::sqrt(std::pow((rho00() - rho11()) / 2.0, 2) + std::norm(rho10()));
    return {mean - half_gap, mean + half_gap};
  }

  /// <psi|rho|psi>.
  double expectation(const PureQubit& psi) const {
    return (psi.vector().adjoint() * m_ * psi.vector())(0, 0).real();
  }

 private:
  Eigen::Matrix2cd m_;
};

inline QubitDensity PureQubit::density() const {
  Eigen::Vector2cd v = vector();
  return QubitDensity::from_matrix(v * v.adjoint());
}

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, canonicalized.
inline PureQubit pure_state(double theta, double phi) { return PureQubit::from_angles(theta, phi); }

inline QubitDensity density_from_bloch(const BlochVector& v) {
  if (!std::isfinite(v.rx) || !std::isfinite(v.ry) || !std::isfinite(v.rz)) {
    throw InvalidStateError("Bloch vector has non-finite components");
  }
  if (v.modulus() > 1.0 + kStateTol) {
    throw InvalidStateError("Bloch vector modulus " + std::to_string(v.modulus()) + " exceeds 1");
  }
  Eigen::Matrix2cd m;
  m << complex(0.5 * (1.0 + v.rz), 0.0), complex(0.5 * v.rx, -0.5 * v.ry),
      complex(0.5 * v.rx, 0.5 * v.ry), complex(0.5 * (1.0 - v.rz), 0.0);
  return QubitDensity::from_matrix(m);
}

inline BlochVector bloch_from_density(const QubitDensity& rho) {
  return {2.0 * rho.rho10().real(), 2.0 * rho.rho10().imag(), rho.rho00() - rho.rho11()};
}

/// rho = (1 - r) I/2 + r |psi><psi|.
struct Decomposition {
  double r = 0.0;
  PureQubit psi;
  // r == 0: psi is the |0> placeholder and carries no information.
  bool degenerate = false;
};

inline Decomposition decompose(const QubitDensity& rho) {
  BlochVector b = bloch_from_density(rho);
  double r = b.modulus();
  if (r <= kStateTol) return {r, PureQubit{}, true};
  double nz = std::clamp(b.rz / r, -1.0, 1.0);
  return {r, pure_state(std::acos(nz), std::atan2(b.ry, b.rx)), false};
}

/// Mixture with Bloch modulus r along psi.
inline QubitDensity mixed_state(double r, const PureQubit& psi) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("modulus r must lie in [0, 1]");
  Eigen::Vector2cd v = psi.vector();
  return QubitDensity::from_matrix((1.0 - r) * Eigen::Matrix2cd::Identity() / 2.0 +
                                   r * v * v.adjoint());
}

/// <a|b>.
inline complex overlap(const PureQubit& a, const PureQubit& b) {
  return std::conj(a.alpha()) * b.alpha() + std::conj(a.beta()) * b.beta();
}

}  // namespace wmnoise
