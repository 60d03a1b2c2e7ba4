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

#include <functional>
#include <variant>

#include "wmnoise/channels.hpp"
#include "wmnoise/errors.hpp"
#include "wmnoise/gaussian_meter.hpp"
#include "wmnoise/optimizer.hpp"
#include "wmnoise/qubit_meter.hpp"
#include "wmnoise/types.hpp"

namespace wmnoise {

/// Tag for the two-level meter prepared in |0>.
struct QubitMeter {};

using Meter = std::variant<GaussianMeter, QubitMeter>;

/// Which readout to maximize.
enum class Quantity { dp, dq, reading };

/// Maps a pure preselection to the state that actually enters the meter.
using Preparation = std::function<QubitDensity(const PureQubit&)>;

/// Signed readout at p, or 0 where the postselection probability vanishes.
class PPSObjective {
 public:
  PPSObjective(Preparation prep, Meter meter, double g, Quantity which)
      : prep_(std::move(prep)), meter_(meter), g_(g), which_(which) {
    detail::check_coupling(g);
    const bool qubit = std::holds_alternative<QubitMeter>(meter_);
    if (qubit != (which_ == Quantity::reading)) {
      throw DomainError("readout does not match the meter: use reading for the qubit meter, dp/dq for the Gaussian meter");
    }
  }

  double operator()(const PPSPoint& p) const {
    const QubitDensity rho = prep_(p.preselection());
    const PureQubit psi_f = p.postselection();
    try {
      if (const auto* gm = std::get_if<GaussianMeter>(&meter_)) {
        ShiftResult s = gaussian_shifts(rho, psi_f, g_, *gm);
        return which_ == Quantity::dp ? s.dp_shift : s.dq_shift;
      }
      return postselected_reading(rho, psi_f, g_).reading;
    } catch (const VanishingPostselectionError&) {
      return 0.0;
    }
  }

 private:
  Preparation prep_;
  Meter meter_;
  double g_;
  Quantity which_;
};

/// Numerical maximum over the PPS manifold with the preselection sent
/// through `channel` first.
inline OptimizationResult channel_max(const KrausChannel& channel, const Meter& meter, double g,
                                      Quantity which, const OptimizerOptions& opts = {}) {
  PPSObjective objective([channel](const PureQubit& psi) { return apply(channel, psi); }, meter, g,
                         which);
  return maximize(objective, opts);
}

/// Numerical maximum for preselections of Bloch modulus r.
inline OptimizationResult modulus_max(double r, const Meter& meter, double g, Quantity which,
                                      const OptimizerOptions& opts = {}) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("modulus r must lie in [0, 1]");
  PPSObjective objective([r](const PureQubit& psi) { return mixed_state(r, psi); }, meter, g, which);
  return maximize(objective, opts);
}

struct AmplitudeDampingMax {
  OptimizationResult result;
  // gamma == 1: every preselection decays to |0> and the coherences vanish.
  bool full_decay = false;
};

/// Maximal readout under amplitude damping, which has no closed form.
inline AmplitudeDampingMax amplitude_damping_max(const Meter& meter, double gamma, double g,
                                                 Quantity which, const OptimizerOptions& opts = {}) {
  KrausChannel channel = amplitude_damping(gamma);
  if (!(g > 0.0)) throw DomainError("amplitude_damping_max: coupling g must be > 0");
  return {channel_max(channel, meter, g, which, opts), gamma == 1.0};
}

}  // namespace wmnoise
