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
#include <random>

#include "wmnoise/wmnoise.hpp"

namespace wmnoise::testing {

inline constexpr double kPi = std::numbers::pi;

/// Haar-uniform pure state.
inline PureQubit random_pure(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double theta = std::acos(1.0 - 2.0 * u(rng));
  const double phi = 2.0 * kPi * u(rng);
  return pure_state(theta, phi);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform point of the closed Bloch ball.
inline BlochVector random_bloch(std::mt19937_64& rng) {
  const PureQubit dir = random_pure(rng);
  const double r = std::cbrt(uniform(rng, 0.0, 1.0));
  const BlochVector v = dir.bloch();
  return {r * v.rx, r * v.ry, r * v.rz};
}

inline QubitDensity random_density(std::mt19937_64& rng) { return density_from_bloch(random_bloch(rng)); }

// Amplitude shorthands for transcribing the pure-state formulas.
struct Amps {
  double a1sq, b1sq, a2sq, b2sq;
  complex x;  // conj(alpha1) beta1 alpha2 conj(beta2)

  Amps(const PureQubit& i, const PureQubit& f)
      : a1sq(std::norm(i.alpha())),
        b1sq(std::norm(i.beta())),
        a2sq(std::norm(f.alpha())),
        b2sq(std::norm(f.beta())),
        x(std::conj(i.alpha()) * i.beta() * f.alpha() * std::conj(f.beta())) {}
};

}  // namespace wmnoise::testing
