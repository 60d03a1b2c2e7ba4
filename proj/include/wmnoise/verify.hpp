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
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wmnoise/adjudication.hpp"
#include "wmnoise/channels.hpp"
#include "wmnoise/gaussian_meter.hpp"
#include "wmnoise/oracle.hpp"
#include "wmnoise/pps_search.hpp"
#include "wmnoise/qubit_meter.hpp"

namespace wmnoise {

/// The closed forms under test. Tests swap one out for a perturbed copy to
/// check that the battery notices.
struct Formulas {
  std::function<ShiftResult(const QubitDensity&, const PureQubit&, double, const GaussianMeter&)>
      gaussian_shifts = [](const QubitDensity& r, const PureQubit& f, double g, const GaussianMeter& m) {
        return wmnoise::gaussian_shifts(r, f, g, m);
      };
  std::function<QubitMeterReading(const QubitDensity&, const PureQubit&, double)> postselected_reading =
      [](const QubitDensity& r, const PureQubit& f, double g) { return wmnoise::postselected_reading(r, f, g); };
  std::function<double(double)> ordinary_reading = [](double g) { return wmnoise::ordinary_reading(g); };
  std::function<GaussianMaxima(double, double, const GaussianMeter&)> gaussian_max_shifts =
      [](double k, double g, const GaussianMeter& m) { return wmnoise::gaussian_max_shifts(k, g, m); };
  std::function<MaxResult(double, double)> qubit_max_reading = [](double k, double g) {
    return wmnoise::qubit_max_reading(k, g);
  };

  static const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"gaussian_shifts", "postselected_reading", "ordinary_reading",
                                            "gaussian_max_shifts", "qubit_max_reading"};
    return n;
  }

  /// Copy with the named formula scaled by (1 + rel).
  Formulas perturbed(const std::string& name, double rel = 1e-3) const {
    Formulas f = *this;
    const double s = 1.0 + rel;
    if (name == "gaussian_shifts") {
      f.gaussian_shifts = [base = gaussian_shifts, s](const QubitDensity& r, const PureQubit& p, double g,
                                                      const GaussianMeter& m) {
        ShiftResult out = base(r, p, g, m);
        out.dp_shift *= s;
        out.dq_shift *= s;
        return out;
      };
    } else if (name == "postselected_reading") {
      f.postselected_reading = [base = postselected_reading, s](const QubitDensity& r, const PureQubit& p, double g) {
        QubitMeterReading out = base(r, p, g);
        out.reading *= s;
        return out;
      };
    } else if (name == "ordinary_reading") {
      f.ordinary_reading = [base = ordinary_reading, s](double g) { return base(g) * s; };
    } else if (name == "gaussian_max_shifts") {
      f.gaussian_max_shifts = [base = gaussian_max_shifts, s](double k, double g, const GaussianMeter& m) {
        GaussianMaxima out = base(k, g, m);
        out.dp.value *= s;
        out.dq.value *= s;
        return out;
      };
    } else if (name == "qubit_max_reading") {
      f.qubit_max_reading = [base = qubit_max_reading, s](double k, double g) {
        MaxResult out = base(k, g);
        out.value *= s;
        return out;
      };
    } else {
      throw DomainError("unknown formula '" + name + "'");
    }
    return f;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int samples = 1000;
  /// Name of a formula to perturb (test hook); empty for none.
  std::string perturb;
  bool adjudicate = true;
};

struct VerifyCheck {
  std::string name;
  std::string formula;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  int cases = 0;
  std::string worst_case;
  bool passed = true;

  void record(double deviation, const std::string& describe) {
    ++cases;
    if (!(deviation <= max_deviation)) {
      max_deviation = deviation;
      worst_case = describe;
    }
    if (!(deviation <= tolerance)) passed = false;
  }
};

inline VerifyCheck make_check(std::string name, std::string formula, double tolerance, bool relative = false) {
  VerifyCheck c;
  c.name = std::move(name);
  c.formula = std::move(formula);
  c.tolerance = tolerance;
  c.relative = relative;
  return c;
}

struct VerifyReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<VerifyCheck> checks;
  AdjudicationReport adjudication;
  bool adjudicated = false;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !adjudicated || adjudication.all_confirmed();
  }

  /// Failed check with the largest deviation-to-tolerance ratio.
  const VerifyCheck* worst_failure() const {
    const VerifyCheck* worst = nullptr;
    for (const auto& c : checks) {
      if (!c.passed && (!worst || c.max_deviation / c.tolerance > worst->max_deviation / worst->tolerance)) {
        worst = &c;
      }
    }
    return worst;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "verification battery (seed " << seed << ", samples " << samples << ")\n";
    for (const auto& c : checks) {
      out << (c.passed ? "PASS  " : "FAIL  ") << c.name << " [" << c.formula << "]: max "
          << (c.relative ? "relative " : "absolute ") << "deviation " << std::scientific;
      out.precision(3);
      out << c.max_deviation << " (tolerance " << c.tolerance << ", " << std::defaultfloat << c.cases
          << " cases)\n";
    }
    if (adjudicated) out << adjudication.to_text();
    if (const VerifyCheck* w = worst_failure()) {
      out << "worst offender: " << w->formula << " in '" << w->name << "' at " << w->worst_case << "\n";
    } else if (adjudicated && !adjudication.all_confirmed()) {
      out << "worst offender: formula adjudication did not confirm the implemented variants\n";
    }
    out << (passed() ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
    return out.str();
  }
};

namespace detail {

inline std::string describe_pps(const PPSPoint& p, const std::string& extra) {
  std::ostringstream out;
  out.precision(17);
  out << "theta1=" << p.theta1 << " theta2=" << p.theta2 << " phi0=" << p.phi0 << " " << extra;
  return out.str();
}

/// A random noisy preselection: Bloch-modulus mixture or one of the channels.
struct RandomPreparation {
  QubitDensity rho;
  std::string label;
};

inline RandomPreparation random_preparation(std::mt19937_64& rng, const PureQubit& psi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int kind = static_cast<int>(unit(rng) * 4.0);
  const double x = unit(rng);
  std::ostringstream label;
  label.precision(17);
  switch (kind) {
    case 0:
      label << "r=" << x;
      return {mixed_state(x, psi), label.str()};
    case 1:
      label << "depolarizing gamma=" << x;
      return {apply(depolarizing(x), psi), label.str()};
    case 2:
      label << "phase_damping gamma=" << x;
      return {apply(phase_damping(x), psi), label.str()};
    default:
      label << "amplitude_damping gamma=" << x;
      return {apply(amplitude_damping(x), psi), label.str()};
  }
}

}  // namespace detail

/// The (kappa, g) grid on which the optimizer must recover the closed-form
/// maxima; g in units of the pointer momentum spread for the Gaussian meter
/// and absolute for the qubit meter.
inline const std::vector<double>& battery_kappas() {
  static const std::vector<double> k{0.2, 0.5, 0.8, 1.0};
  return k;
}
inline const std::vector<double>& battery_couplings() {
  static const std::vector<double> g{0.03, 0.05, 0.1};
  return g;
}

/// Oracle equivalence, optimizer/closed-form agreement and (optionally)
/// formula adjudication.
inline VerifyReport run_verification(const VerifyOptions& opts, const Formulas& base = {}) {
  const Formulas f = opts.perturb.empty() ? base : base.perturbed(opts.perturb);
  VerifyReport report;
  report.seed = opts.seed;
  report.samples = opts.samples;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double pi = std::numbers::pi;

  VerifyCheck ordinary = make_check("ordinary reading vs exact 4x4 oracle", "ordinary_reading", 1e-15);
  VerifyCheck qubit = make_check("postselected reading vs exact 4x4 oracle", "postselected_reading", 1e-12);
  for (int i = 0; i < opts.samples;) {
    const PPSPoint p{pi * unit(rng), pi * unit(rng), 2.0 * pi * unit(rng)};
    const double g = 0.5 * pi * unit(rng);
    const auto prep = detail::random_preparation(rng, p.preselection());
    const std::string where = detail::describe_pps(p, prep.label + " g=" + std::to_string(g));
    ordinary.record(std::abs(f.ordinary_reading(g) - qubit_joint_evolve(prep.rho, std::nullopt, g).reading),
                    where);
    const QubitMeterReading exact = qubit_joint_evolve(prep.rho, p.postselection(), g);
    if (exact.prob < 1e-3) continue;
    qubit.record(std::abs(f.postselected_reading(prep.rho, p.postselection(), g).reading - exact.reading), where);
    ++i;
  }
  report.checks.push_back(ordinary);
  report.checks.push_back(qubit);

  VerifyCheck gaussian = make_check("Gaussian shifts vs pointer-grid oracle", "gaussian_shifts", 1e-6);
  for (int i = 0; i < opts.samples;) {
    const PPSPoint p{pi * unit(rng), pi * unit(rng), 2.0 * pi * unit(rng)};
    const GaussianMeter meter(0.5 + 1.5 * unit(rng));
    const double g = 0.5 * unit(rng) / meter.delta();
    const auto prep = detail::random_preparation(rng, p.preselection());
    const ShiftResult exact = gaussian_grid_evolve(prep.rho, p.postselection(), g, meter);
    if (exact.prob < 1e-3) continue;
    const ShiftResult s = f.gaussian_shifts(prep.rho, p.postselection(), g, meter);
    const double dev = std::max(
        {std::abs(s.dp_shift - exact.dp_shift), std::abs(s.dq_shift - exact.dq_shift), std::abs(s.prob - exact.prob)});
    gaussian.record(dev, detail::describe_pps(p, prep.label + " g=" + std::to_string(g) +
                                                     " delta=" + std::to_string(meter.delta())));
    ++i;
  }
  report.checks.push_back(gaussian);

  VerifyCheck gmax = make_check("maximal Gaussian shifts vs optimizer", "gaussian_max_shifts", 1e-6, true);
  VerifyCheck qmax = make_check("maximal qubit reading vs optimizer", "qubit_max_reading", 1e-6, true);
  const GaussianMeter meter(1.0);
  for (double kappa : battery_kappas()) {
    const std::vector<std::pair<std::string, Preparation>> preps{
        {"modulus", [kappa](const PureQubit& psi) { return mixed_state(kappa, psi); }},
        {"depolarizing", [kappa](const PureQubit& psi) { return apply(depolarizing(1.0 - kappa), psi); }},
        {"phase-damping", [kappa](const PureQubit& psi) { return apply(phase_damping(1.0 - kappa), psi); }},
    };
    for (double gu : battery_couplings()) {
      const double g = gu * meter.dp();
      const GaussianMaxima closed = f.gaussian_max_shifts(kappa, g, meter);
      const double reading = f.qubit_max_reading(kappa, gu).value;
      for (const auto& [label, prep] : preps) {
        const std::string where =
            label + " kappa=" + std::to_string(kappa) + " g/dp=" + std::to_string(gu);
        const double dp = maximize(PPSObjective(prep, meter, g, Quantity::dp)).value;
        const double dq = maximize(PPSObjective(prep, meter, g, Quantity::dq)).value;
        gmax.record(std::abs(dp - closed.dp.value) / closed.dp.value, where + " (dp)");
        if (closed.dq.value > 0.0) {
          gmax.record(std::abs(dq - closed.dq.value) / closed.dq.value, where + " (dq)");
        }
        const double q = maximize(PPSObjective(prep, QubitMeter{}, gu, Quantity::reading)).value;
        qmax.record(std::abs(q - reading) / reading, label + " kappa=" + std::to_string(kappa) +
                                                         " g=" + std::to_string(gu));
      }
    }
  }
  report.checks.push_back(gmax);
  report.checks.push_back(qmax);

  if (opts.adjudicate) {
    report.adjudication = adjudicate_variants();
    report.adjudicated = true;
  }
  return report;
}

}  // namespace wmnoise
