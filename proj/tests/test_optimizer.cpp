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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "wmnoise/gaussian_meter.hpp"
#include "wmnoise/optimizer.hpp"
#include "wmnoise/pps_search.hpp"
#include "wmnoise/qubit_meter.hpp"

namespace wmnoise {
namespace {

using testing::kPi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Chart, RoundTripAndPoles) {
  EXPECT_LT(detail::theta_from_chart(-detail::kPoleChartLimit), 1e-20);
  EXPECT_GT(detail::theta_from_chart(detail::kPoleChartLimit), kPi - 1e-15);
  EXPECT_NEAR(detail::theta_from_chart(0.0), kPi / 2, 1e-15);
  for (double theta : {1e-6, 0.3, kPi / 2, 3.0}) {
    EXPECT_NEAR(detail::theta_from_chart(detail::chart_from_theta(theta)), theta, 1e-12);
  }
  EXPECT_EQ(detail::wrap_phase(-kPi / 2), 1.5 * kPi);
  EXPECT_EQ(detail::wrap_phase(2 * kPi), 0.0);
}

TEST(Maximize, ConstantObjective) {
  OptimizationResult r = maximize([](const PPSPoint&) { return -2.5; }, 16, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.cycles, 1u);
  EXPECT_EQ(r.value, 2.5);
  EXPECT_EQ(r.signed_value, -2.5);
}

TEST(Maximize, RejectsBadOptions) {
  auto f = [](const PPSPoint&) { return 1.0; };
  EXPECT_THROW(maximize(f, 15, 1e-12), DomainError);
  EXPECT_THROW(maximize(f, 32, 0.0), DomainError);
}

TEST(Maximize, NonFiniteObjectiveReportsProbe) {
  auto f = [](const PPSPoint& p) { return p.theta1 > 1.0 ? NAN : 0.0; };
  try {
    maximize(f, 16, 1e-12);
    FAIL() << "expected OptimizationError";
  } catch (const OptimizationError& e) {
    EXPECT_GT(e.probe().theta1, 1.0);
  }
}

TEST(Maximize, SmoothInteriorPeak) {
  auto f = [](const PPSPoint& p) {
    return std::exp(-std::pow(p.theta1 - 1.1, 2) - std::pow(p.theta2 - 2.3, 2)) * (1.0 + 0.5 * std::cos(p.phi0 - 4.0));
  };
  OptimizationResult r = maximize(f, OptimizerOptions{});
  EXPECT_NEAR(r.value, 1.5, 1e-12);
  EXPECT_NEAR(r.argmax.theta1, 1.1, 1e-5);
  EXPECT_NEAR(r.argmax.theta2, 2.3, 1e-5);
  EXPECT_NEAR(r.argmax.phi0, 4.0, 1e-5);
}

TEST(PPSObjective, MeterMustMatchQuantity) {
  auto prep = [](const PureQubit& psi) { return psi.density(); };
  EXPECT_THROW(PPSObjective(prep, QubitMeter{}, 0.1, Quantity::dp), DomainError);
  EXPECT_THROW(PPSObjective(prep, GaussianMeter(1.0), 0.1, Quantity::reading), DomainError);
  EXPECT_THROW(PPSObjective(prep, QubitMeter{}, -0.1, Quantity::reading), DomainError);
}

TEST(PPSObjective, VanishingPostselectionEvaluatesToZero) {
  PPSObjective f([](const PureQubit& psi) { return psi.density(); }, GaussianMeter(1.0), 0.1, Quantity::dp);
  EXPECT_EQ(f(PPSPoint{0.0, kPi, 0.0}), 0.0);
}

TEST(ModulusMax, PureMomentumShift) {
  GaussianMeter meter(1.0);
  const double g = 0.1 * meter.dp();
  OptimizationResult r = modulus_max(1.0, meter, g, Quantity::dp);
  GaussianMaxima closed = gaussian_max_shifts(1.0, g, meter);
  EXPECT_LT(rel(r.value, closed.dp.value), 1e-6);
  PPSObjective f([](const PureQubit& psi) { return psi.density(); }, meter, g, Quantity::dp);
  EXPECT_EQ(std::abs(f(r.argmax)), r.value);
}

TEST(ModulusMax, MomentumArgmaxOnEquatorBelowFullCoherence) {
  GaussianMeter meter(1.0);
  const double g = 0.1 * meter.dp();
  OptimizationResult r = modulus_max(0.8, meter, g, Quantity::dp);
  GaussianMaxima closed = gaussian_max_shifts(0.8, g, meter);
  EXPECT_LT(rel(r.value, closed.dp.value), 1e-6);
  EXPECT_NEAR(std::cos(r.argmax.theta1), 0.0, 1e-4);
  EXPECT_NEAR(std::abs(std::cos(r.argmax.theta2)), std::cos(closed.dp.argmax.theta2), 1e-4);
}

TEST(ModulusMax, QubitReadingAtOrthogonalPPS) {
  OptimizationResult r = modulus_max(1.0, QubitMeter{}, 0.1, Quantity::reading);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_NEAR(r.argmax.theta1 + r.argmax.theta2, kPi, 1e-4);
  EXPECT_LT(std::abs(overlap(r.argmax.preselection(), r.argmax.postselection())), 1e-4);
}

TEST(ModulusMax, RecoversClosedFormsAcrossBattery) {
  GaussianMeter meter(1.0);
  for (double kappa : {0.2, 0.8}) {
    for (double gu : {0.03, 0.1}) {
      const double g = gu * meter.dp();
      GaussianMaxima closed = gaussian_max_shifts(kappa, g, meter);
      EXPECT_LT(rel(modulus_max(kappa, meter, g, Quantity::dp).value, closed.dp.value), 1e-6);
      EXPECT_LT(rel(modulus_max(kappa, meter, g, Quantity::dq).value, closed.dq.value), 1e-6);
      EXPECT_LT(rel(modulus_max(kappa, QubitMeter{}, gu, Quantity::reading).value,
                    qubit_max_reading(kappa, gu).value),
                1e-6);
    }
  }
}

TEST(ModulusMax, NeverExceedsClosedForm) {
  GaussianMeter meter(1.0);
  for (double kappa : {0.3, 0.9}) {
    const double g = 0.05 * meter.dp();
    GaussianMaxima closed = gaussian_max_shifts(kappa, g, meter);
    EXPECT_LE(modulus_max(kappa, meter, g, Quantity::dp).value, closed.dp.value * (1 + 1e-8));
    EXPECT_LE(modulus_max(kappa, meter, g, Quantity::dq).value, closed.dq.value * (1 + 1e-8));
  }
}

TEST(ChannelMax, DeterministicBitForBit) {
  GaussianMeter meter(1.0);
  OptimizationResult a = channel_max(depolarizing(0.3), meter, 0.05, Quantity::dq);
  OptimizationResult b = channel_max(depolarizing(0.3), meter, 0.05, Quantity::dq);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmax.theta1, b.argmax.theta1);
  EXPECT_EQ(a.argmax.theta2, b.argmax.theta2);
  EXPECT_EQ(a.argmax.phi0, b.argmax.phi0);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

// Readouts depend on the azimuths only through phi1 - phi2, so a sparse
// four-angle scan cannot beat the three-angle search.
TEST(ChannelMax, PhaseReduction) {
  GaussianMeter meter(1.0);
  const double g = 0.1 * meter.dp();
  const KrausChannel ch = amplitude_damping(0.3);
  for (Quantity q : {Quantity::dp, Quantity::dq}) {
    const double best3 = channel_max(ch, meter, g, q).value;
    double best4 = 0.0;
    const int n = 12;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k <= n; ++k) {
          for (int l = 0; l < n; ++l) {
            const PureQubit pre = pure_state(kPi * i / n, 2 * kPi * j / n);
            const PureQubit post = pure_state(kPi * k / n, 2 * kPi * l / n);
            ShiftResult s = gaussian_shifts(apply(ch, pre), post, g, meter, -1.0);
            if (s.prob <= kProbFloor) continue;
            best4 = std::max(best4, std::abs(q == Quantity::dp ? s.dp_shift : s.dq_shift));
          }
        }
      }
    }
    EXPECT_LE(best4, best3 + 1e-9);
  }
}

TEST(AmplitudeDampingMax, GaussianMomentumUnaffected) {
  GaussianMeter meter(1.0);
  const double g = 0.1 * meter.dp();
  AmplitudeDampingMax r = amplitude_damping_max(meter, 0.5, g, Quantity::dp);
  EXPECT_FALSE(r.full_decay);
  EXPECT_LT(rel(r.result.value, gaussian_max_shifts(1.0, g, meter).dp.value), 1e-5);
}

TEST(AmplitudeDampingMax, QubitReadingUnaffected) {
  AmplitudeDampingMax r = amplitude_damping_max(QubitMeter{}, 0.5, 0.1, Quantity::reading);
  EXPECT_NEAR(r.result.value, 1.0, 1e-6);
}

TEST(AmplitudeDampingMax, ZeroNoiseIsNoiseless) {
  GaussianMeter meter(1.0);
  const double g = 0.05 * meter.dp();
  GaussianMaxima closed = gaussian_max_shifts(1.0, g, meter);
  EXPECT_LT(rel(amplitude_damping_max(meter, 0.0, g, Quantity::dq).result.value, closed.dq.value), 1e-6);
  EXPECT_LT(rel(amplitude_damping_max(QubitMeter{}, 0.0, 0.05, Quantity::reading).result.value, 1.0), 1e-6);
}

TEST(AmplitudeDampingMax, FullDecay) {
  GaussianMeter meter(1.0);
  const double g = 0.1 * meter.dp();
  AmplitudeDampingMax dq = amplitude_damping_max(meter, 1.0, g, Quantity::dq);
  EXPECT_TRUE(dq.full_decay);
  EXPECT_LT(dq.result.value, 1e-8);
  // Everything decays to |0>: dp = g on every postselection with overlap.
  EXPECT_NEAR(amplitude_damping_max(meter, 1.0, g, Quantity::dp).result.value, g, 1e-12);
  EXPECT_NEAR(amplitude_damping_max(QubitMeter{}, 1.0, 0.1, Quantity::reading).result.value,
              ordinary_reading(0.1), 1e-12);
}

TEST(AmplitudeDampingMax, RequiresPositiveCoupling) {
  EXPECT_THROW(amplitude_damping_max(QubitMeter{}, 0.5, 0.0, Quantity::reading), DomainError);
  EXPECT_THROW(amplitude_damping_max(QubitMeter{}, 1.5, 0.1, Quantity::reading), DomainError);
}

}  // namespace
}  // namespace wmnoise
