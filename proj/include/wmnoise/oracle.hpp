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

// Brute-force evolution of the joint system (x) meter state. Nothing in
// this header may call into gaussian_meter.hpp or qubit_meter.hpp: it is
// the independent reference those closed forms are checked against.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "wmnoise/errors.hpp"
#include "wmnoise/qubit.hpp"
#include "wmnoise/types.hpp"

namespace wmnoise {

// ---------------------------------------------------------------------------
// Qubit meter: exact 4x4 evolution.
// ---------------------------------------------------------------------------

/// rho_s (x) |0><0| evolved by U = exp(i g sigma_z (x) sigma_x). Index
/// ordering is 2 * system + meter.
inline Eigen::Matrix4cd qubit_joint_state(const QubitDensity& rho_s, double g) {
  Eigen::Matrix2cd z, x, meter0;
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  meter0 << 1, 0, 0, 0;
  Eigen::Matrix4cd zx, rho0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      zx.block<2, 2>(2 * i, 2 * j) = z(i, j) * x;
      rho0.block<2, 2>(2 * i, 2 * j) = rho_s.matrix()(i, j) * meter0;
    }
  }
  // (sigma_z (x) sigma_x)^2 = I, so the exponential is exact.
  const Eigen::Matrix4cd u =
      std::cos(g) * Eigen::Matrix4cd::Identity() + complex(0.0, std::sin(g)) * zx;
  return u * rho0 * u.adjoint();
}

/// Partial trace over the system.
inline Eigen::Matrix2cd trace_out_system(const Eigen::Matrix4cd& joint) {
  return joint.block<2, 2>(0, 0) + joint.block<2, 2>(2, 2);
}

/// Reading of O = |1><1| on the meter after the interaction, optionally
/// conditioned on projecting the system onto psi_f.
inline QubitMeterReading qubit_joint_evolve(const QubitDensity& rho_s,
                                            const std::optional<PureQubit>& psi_f, double g) {
  if (!(std::isfinite(g) && g >= 0.0)) throw DomainError("coupling g must be finite and >= 0");
  const Eigen::Matrix4cd joint = qubit_joint_state(rho_s, g);
  if (!psi_f) {
    const Eigen::Matrix2cd meter = trace_out_system(joint);
    return {meter(1, 1).real(), 1.0};
  }
  const Eigen::Vector2cd f = psi_f->vector();
  const Eigen::Matrix2cd proj = f * f.adjoint();
  Eigen::Matrix4cd pi_f;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      pi_f.block<2, 2>(2 * i, 2 * j) = proj(i, j) * Eigen::Matrix2cd::Identity();
    }
  }
  const Eigen::Matrix2cd meter = trace_out_system(pi_f * joint);
  const double prob = meter.trace().real();
  if (!(prob > 1e-300)) throw VanishingPostselectionError(prob);
  return {meter(1, 1).real() / prob, prob};
}

// ---------------------------------------------------------------------------
// Gaussian meter: position grid with exact branch phases.
// ---------------------------------------------------------------------------

/// Periodic grid q_n = -half_width + n * spacing, n < points.
struct PositionGrid {
  double half_width = 10.0;
  std::size_t points = 4096;

  double spacing() const { return 2.0 * half_width / static_cast<double>(points); }

  /// 10 delta + 4 g delta^2 wide, 4096 points.
  static PositionGrid for_meter(const GaussianMeter& meter, double g, std::size_t points = 4096) {
    const double d = meter.delta();
    return {10.0 * d + 4.0 * g * d * d, points};
  }
};

/// Matrix elements <Phi_k| R |Phi_j> of the two meter branches
/// Phi_0 = e^{+igq} Phi and Phi_1 = e^{-igq} Phi (system eigenvalues +1 and -1),
/// plus the first moments of the unperturbed pointer.
struct GaussianBranchMoments {
  Eigen::Matrix2cd overlap;   // R = 1
  Eigen::Matrix2cd position;  // R = q
  Eigen::Matrix2cd momentum;  // R = p, spectral derivative
  double initial_norm = 1.0;
  double initial_q = 0.0;
  double initial_p = 0.0;
};

/// Tabulates the branch moments on `grid`. The moments do not depend on the
/// system states, so one table serves every (rho_s, psi_f) pair.
inline GaussianBranchMoments gaussian_branch_moments(double g, const GaussianMeter& meter,
                                                     const PositionGrid& grid) {
  if (!(std::isfinite(g) && g >= 0.0)) throw DomainError("coupling g must be finite and >= 0");
  const double delta = meter.delta();
  if (g * delta > 1.0) throw DomainError("grid oracle requires g * delta <= 1");
  const std::size_t n = grid.points;
  if (n < 16 || (n & (n - 1)) != 0) throw DomainError("grid points must be a power of two >= 16");
  if (!(grid.half_width > 0.0)) throw DomainError("grid half width must be > 0");

  const double tail = std::erfc(grid.half_width / (std::sqrt(2.0) * delta));
  if (tail > 1e-6) throw GridTooSmallError("pointer norm lost beyond the grid edges: " + std::to_string(tail));
  const double dx = grid.spacing();
  const double nyquist = std::numbers::pi / dx;
  if (g + 10.0 * meter.dp() > nyquist) {
    throw GridTooSmallError("grid too coarse to resolve the pointer momentum");
  }

  std::vector<double> q(n), phi(n);
  const double norm = std::pow(2.0 * std::numbers::pi * delta * delta, -0.25);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = -grid.half_width + static_cast<double>(i) * dx;
    phi[i] = norm * std::exp(-q[i] * q[i] / (4.0 * delta * delta));
  }
  std::vector<double> k(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double index = m < n / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
    k[m] = 2.0 * std::numbers::pi * index / (static_cast<double>(n) * dx);
  }
  k[n / 2] = 0.0;

  Eigen::FFT<double> fft;
  auto apply_p = [&](const std::vector<complex>& f) {
    std::vector<complex> spectrum, out;
    fft.fwd(spectrum, f);
    for (std::size_t m = 0; m < n; ++m) spectrum[m] *= k[m];
    fft.inv(out, spectrum);
    return out;
  };

  std::vector<complex> branch[2];
  for (int j = 0; j < 2; ++j) {
    const double a = j == 0 ? 1.0 : -1.0;
    branch[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) branch[j][i] = std::polar(phi[i], a * g * q[i]);
  }
  const std::vector<complex> p_branch[2] = {apply_p(branch[0]), apply_p(branch[1])};

  GaussianBranchMoments out;
  for (int kk = 0; kk < 2; ++kk) {
    for (int j = 0; j < 2; ++j) {
      complex s = 0.0, sq = 0.0, sp = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const complex bra = std::conj(branch[kk][i]);
        s += bra * branch[j][i];
        sq += bra * q[i] * branch[j][i];
        sp += bra * p_branch[j][i];
      }
      out.overlap(kk, j) = s * dx;
      out.position(kk, j) = sq * dx;
      out.momentum(kk, j) = sp * dx;
    }
  }

  std::vector<complex> phi_c(phi.begin(), phi.end());
  const std::vector<complex> p_phi = apply_p(phi_c);
  double n0 = 0.0, q0 = 0.0;
  complex p0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    n0 += phi[i] * phi[i];
    q0 += q[i] * phi[i] * phi[i];
    p0 += phi[i] * p_phi[i];
  }
  out.initial_norm = n0 * dx;
  if (std::abs(out.initial_norm - 1.0) > 1e-8) {
    throw GridTooSmallError("discrete pointer norm deviates from 1 by more than 1e-8");
  }
  out.initial_q = q0 * dx / out.initial_norm;
  out.initial_p = p0.real() * dx / out.initial_norm;
  return out;
}

/// Postselected shifts from tabulated branch moments:
/// rho_d' ~ sum_{jk} rho_jk conj(f_j) f_k |Phi_j><Phi_k|.
inline ShiftResult contract_branch_moments(const GaussianBranchMoments& m, const QubitDensity& rho_s,
                                           const PureQubit& psi_f, double prob_floor = kProbFloor) {
  const Eigen::Vector2cd f = psi_f.vector();
  complex prob = 0.0, q = 0.0, p = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const complex w = rho_s.matrix()(j, k) * std::conj(f(j)) * f(k);
      prob += w * m.overlap(k, j);
      q += w * m.position(k, j);
      p += w * m.momentum(k, j);
    }
  }
  if (!(prob.real() > prob_floor)) throw VanishingPostselectionError(prob.real());
  return {p.real() / prob.real() - m.initial_p, q.real() / prob.real() - m.initial_q, prob.real()};
}

/// Pointer shifts by direct evolution of the pointer wavefunction.
inline ShiftResult gaussian_grid_evolve(const QubitDensity& rho_s, const PureQubit& psi_f, double g,
                                        const GaussianMeter& meter, const PositionGrid& grid) {
  return contract_branch_moments(gaussian_branch_moments(g, meter, grid), rho_s, psi_f);
}

inline ShiftResult gaussian_grid_evolve(const QubitDensity& rho_s, const PureQubit& psi_f, double g,
                                        const GaussianMeter& meter) {
  return gaussian_grid_evolve(rho_s, psi_f, g, meter, PositionGrid::for_meter(meter, g));
}

}  // namespace wmnoise
