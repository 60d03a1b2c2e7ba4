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
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "wmnoise/types.hpp"

namespace wmnoise {

/// The objective returned a non-finite value at `probe`.
class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(const std::string& what, const PPSPoint& probe)
      : std::runtime_error(what), probe_(probe) {}

  const PPSPoint& probe() const noexcept { return probe_; }

 private:
  PPSPoint probe_;
};

struct OptimizationResult {
  /// max |objective| found.
  double value = 0.0;
  /// objective(argmax) with its sign.
  double signed_value = 0.0;
  PPSPoint argmax;
  std::size_t evaluations = 0;
  std::size_t cycles = 0;
  bool converged = false;
};

struct OptimizerOptions {
  int grid_n = 64;
  double tol = 1e-12;
  int max_cycles = 5000;
  /// Golden-section searches stop once the bracket is narrower than this.
  double line_tol = 1e-11;
};

namespace detail {

inline constexpr double kGoldenRatioConj = 0.6180339887498949;  // (sqrt(5) - 1) / 2

inline double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return phi;
}

using Coords = std::array<double, 3>;

// Polar angles are searched through theta = (pi/2)(1 + tanh(s)), which is
// linear near the equator and logarithmic in the distance to either pole.
inline constexpr double kPoleChartLimit = 25.0;

inline double theta_from_chart(double s) {
  s = std::clamp(s, -kPoleChartLimit, kPoleChartLimit);
  return s < 0.0 ? std::numbers::pi / (1.0 + std::exp(-2.0 * s))
                 : std::numbers::pi - std::numbers::pi / (1.0 + std::exp(2.0 * s));
}

inline double chart_from_theta(double theta) {
  const double u = std::clamp(theta / std::numbers::pi, 0.0, 1.0);
  if (u == 0.0) return -kPoleChartLimit;
  if (u == 1.0) return kPoleChartLimit;
  return std::clamp(0.5 * std::log(u / (1.0 - u)), -kPoleChartLimit, kPoleChartLimit);
}

/// Maximizes |f| over (theta1, theta2, phi0). Refinement runs in chart
/// coordinates (s1, s2, phi0); the best probe ever evaluated is kept.
template <class Objective>
class PPSSearch {
 public:
  PPSSearch(Objective& f, const OptimizerOptions& opts) : f_(f), opts_(opts) {}

  double eval(const PPSPoint& p) {
    const double v = static_cast<double>(f_(p));
    ++evaluations_;
    if (!std::isfinite(v)) throw OptimizationError("objective is not finite", p);
    if (std::abs(v) > best_abs_) {
      best_abs_ = std::abs(v);
      best_signed_ = v;
      best_point_ = p;
      best_ = {chart_from_theta(p.theta1), chart_from_theta(p.theta2), p.phi0};
    }
    return std::abs(v);
  }

  double eval_chart(const Coords& y) {
    return eval({theta_from_chart(y[0]), theta_from_chart(y[1]), wrap_phase(y[2])});
  }

  void coarse_grid() {
    const int n = opts_.grid_n;
    const double dtheta = std::numbers::pi / (n - 1);
    const double dphi = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          eval({i * dtheta, j * dtheta, k * dphi});
        }
      }
    }
    // One grid cell at the equator, where dtheta/ds = pi/2.
    step_ = {2.0 * dtheta / std::numbers::pi, 2.0 * dtheta / std::numbers::pi, dphi};
  }

  /// Golden-section search of |f| along base + t * dir for t in [lo, hi].
  void line_search(const Coords& base, const Coords& dir, double lo, double hi) {
    auto at = [&](double t) {
      Coords y = base;
      for (int c = 0; c < 3; ++c) y[c] += t * dir[c];
      return eval_chart(y);
    };
    const double dir_norm = std::max({std::abs(dir[0]), std::abs(dir[1]), std::abs(dir[2])});
    double a = lo, b = hi;
    double c = b - kGoldenRatioConj * (b - a);
    double d = a + kGoldenRatioConj * (b - a);
    double fc = at(c), fd = at(d);
    while ((b - a) * dir_norm > opts_.line_tol) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kGoldenRatioConj * (b - a);
        fc = at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kGoldenRatioConj * (b - a);
        fd = at(d);
      }
    }
  }

  /// Line search along dir from the current best: golden section inside
  /// [-h, h], or, when an end of that bracket improves, doubling steps in
  /// that direction until |f| stops improving and golden section on the
  /// last bracket.
  void directional_search(const Coords& dir, double h) {
    const Coords base = best_;
    const double span = std::max({std::abs(dir[0]), std::abs(dir[1]), std::abs(dir[2])});
    if (span == 0.0 || !(h > 0.0)) return;
    const double t_max = 4.0 * kPoleChartLimit / span;
    auto at = [&](double t) {
      return eval_chart({base[0] + t * dir[0], base[1] + t * dir[1], base[2] + t * dir[2]});
    };

    const double f0 = best_abs_;
    const double fp = at(h);
    const double fm = at(-h);
    if (std::max(fp, fm) <= f0) {
      line_search(base, dir, -h, h);
      return;
    }
    const double sign = fp >= fm ? 1.0 : -1.0;
    double before = 0.0, prev = h, f_prev = std::max(fp, fm);
    double t = std::min(2.0 * h, t_max);
    while (true) {
      const double v = at(sign * t);
      if (v <= f_prev || t >= t_max) break;
      before = prev;
      prev = t;
      f_prev = v;
      t = std::min(2.0 * t, t_max);
    }
    if (sign > 0.0) {
      line_search(base, dir, before, t);
    } else {
      line_search(base, dir, -t, -before);
    }
  }

  OptimizationResult run() {
    coarse_grid();
    OptimizationResult out;
    for (int cycle = 0; cycle < opts_.max_cycles; ++cycle) {
      const double start_value = best_abs_;
      const Coords start = best_;
      directional_search({1.0, 0.0, 0.0}, step_[0]);
      directional_search({0.0, 1.0, 0.0}, step_[1]);
      directional_search({0.0, 0.0, 1.0}, step_[2]);
      // Ridges running into a pair of poles are diagonal in chart space.
      directional_search({1.0, 1.0, 0.0}, step_[0]);
      directional_search({1.0, -1.0, 0.0}, step_[0]);
      const Coords moved{best_[0] - start[0], best_[1] - start[1], best_[2] - start[2]};
      directional_search(moved, 1.0);
      ++out.cycles;
      if (best_abs_ - start_value < opts_.tol) {
        out.converged = true;
        break;
      }
    }
    out.value = best_abs_;
    out.signed_value = best_signed_;
    out.argmax = best_point_;
    out.evaluations = evaluations_;
    return out;
  }

 private:
  Objective& f_;
  OptimizerOptions opts_;
  Coords best_{0.0, 0.0, 0.0};
  Coords step_{0.0, 0.0, 0.0};
  PPSPoint best_point_;
  double best_abs_ = -1.0;
  double best_signed_ = 0.0;
  std::size_t evaluations_ = 0;
};

}  // namespace detail

/// Deterministic global maximization of |objective(p)| over the PPS manifold.
///
/// A grid_n^3 coarse grid (theta's inclusive of both poles, phi0 on
/// [0, 2 pi)) seeds cyclic golden-section line searches on theta1, theta2
/// and phi0, each followed by an extrapolation along the cycle's net move.
/// Stops when a full cycle improves the value by less than tol.
template <class Objective>
OptimizationResult maximize(Objective&& objective, const OptimizerOptions& opts = {}) {
  if (opts.grid_n < 16) throw DomainError("maximize: grid_n must be >= 16");
  if (!(opts.tol > 0.0)) throw DomainError("maximize: tol must be > 0");
  detail::PPSSearch<std::remove_reference_t<Objective>> search(objective, opts);
  return search.run();
}

template <class Objective>
OptimizationResult maximize(Objective&& objective, int grid_n, double tol) {
  OptimizerOptions opts;
  opts.grid_n = grid_n;
  opts.tol = tol;
  return maximize(std::forward<Objective>(objective), opts);
}

}  // namespace wmnoise
