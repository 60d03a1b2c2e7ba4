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

// Settles the formula variants that disagree in print by scoring each one
// against the oracle. Like the oracle, this stays clear of the closed-form
// meter headers: every variant is written out here in terms of the
// PPS amplitudes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wmnoise/channels.hpp"
#include "wmnoise/csv.hpp"
#include "wmnoise/optimizer.hpp"
#include "wmnoise/oracle.hpp"
#include "wmnoise/qubit.hpp"
#include "wmnoise/types.hpp"

namespace wmnoise {

enum class Verdict { confirmed, inconclusive, contradicted };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::confirmed:
      return "confirmed";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::contradicted:
      return "contradicted";
  }
  return "unknown";
}

struct Dispute {
  std::string name;
  std::string normative;  // variant the library implements
  std::string rejected;
  double tolerance = 0.0;
  double normative_deviation = 0.0;  // max |variant - oracle| over inputs
  double rejected_deviation = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

struct AdjudicationRow {
  std::string dispute;
  std::string variant;
  int input_id = 0;
  double deviation = 0.0;
};

struct AdjudicationReport {
  std::uint64_t seed = 0;
  std::vector<Dispute> disputes;
  std::vector<AdjudicationRow> rows;

  bool all_confirmed() const {
    for (const auto& d : disputes) {
      if (d.verdict != Verdict::confirmed) return false;
    }
    return true;
  }

  std::string to_text() const {
    std::ostringstream out;
    out.precision(3);
    out << "adjudication (seed " << seed << ")\n";
    for (const auto& d : disputes) {
      out << "  " << d.name << ": " << verdict_name(d.verdict) << "\n"
          << "    " << d.normative << ": max deviation " << std::scientific << d.normative_deviation << "\n"
          << "    " << d.rejected << ": max deviation " << d.rejected_deviation << "\n"
          << "    tolerance " << d.tolerance << std::defaultfloat << "\n";
    }
    return out.str();
  }

  /// One row per (dispute, variant, input): the deviation from the oracle.
  void to_csv(std::ostream& out) const {
    out << "# seed=" << seed << "\n";
    out << "dispute,variant,input_id,deviation\n";
    for (const auto& row : rows) {
      out << '"' << row.dispute << "\",\"" << row.variant << "\"," << row.input_id << ","
          << format_number(row.deviation) << "\n";
    }
  }
};

struct AdjudicationOptions {
  std::uint64_t seed = 20240601;
  int inputs = 64;
  double g = 0.3;
  double delta = 1.0;
  OptimizerOptions optimizer;
};

namespace detail {

struct PPSAmplitudes {
  complex a1, b1, a2, b2;
};

inline PPSAmplitudes amplitudes(const PureQubit& i, const PureQubit& f) {
  return {i.alpha(), i.beta(), f.alpha(), f.beta()};
}

inline Verdict judge(double normative, double rejected, double tol) {
  if (normative < tol && rejected >= 10.0 * tol) return Verdict::confirmed;
  if (normative < tol && rejected < tol) return Verdict::inconclusive;
  return Verdict::contradicted;
}

class DisputeScorer {
 public:
  DisputeScorer(AdjudicationReport& report, Dispute d) : report_(report), d_(std::move(d)) {}

  void score(int id, double normative, double rejected, double oracle) {
    const double dn = std::abs(normative - oracle);
    const double dr = std::abs(rejected - oracle);
    d_.normative_deviation = std::max(d_.normative_deviation, dn);
    d_.rejected_deviation = std::max(d_.rejected_deviation, dr);
    report_.rows.push_back({d_.name, d_.normative, id, dn});
    report_.rows.push_back({d_.name, d_.rejected, id, dr});
  }

  void finish() {
    d_.verdict = judge(d_.normative_deviation, d_.rejected_deviation, d_.tolerance);
    report_.disputes.push_back(d_);
  }

 private:
  AdjudicationReport& report_;
  Dispute d_;
};

}  // namespace detail

/// Scores each printed variant of the disputed formulas against the oracle
/// on a seeded input set.
inline AdjudicationReport adjudicate_variants(const AdjudicationOptions& opts = {}) {
  AdjudicationReport report;
  report.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double pi = std::numbers::pi;

  const GaussianMeter meter(opts.delta);
  const double g = opts.g;
  const double d2 = opts.delta * opts.delta;
  const double c = std::exp(-2.0 * d2 * g * g);
  const GaussianBranchMoments moments =
      gaussian_branch_moments(g, meter, PositionGrid::for_meter(meter, g));

  // Pointwise position shift for Bloch-modulus-r preselections, with and
  // without the decoherence factor in the numerator.
  {
    detail::DisputeScorer s(report, {"position shift, modulus-r preselection",
                                     "numerator with exp(-2 delta^2 g^2)",
                                     "numerator without exp(-2 delta^2 g^2)",
                                     1e-6});
    for (int id = 0; id < opts.inputs;) {
      const double r = unit(rng);
      const PPSPoint p{pi * unit(rng), pi * unit(rng), 2.0 * pi * unit(rng)};
      const double s1 = std::sin(p.theta1), s2 = std::sin(p.theta2);
      const double den =
          1.0 + r * std::cos(p.theta1) * std::cos(p.theta2) + r * s1 * s2 * std::cos(p.phi0) * c;
      if (den < 1e-2) continue;
      const double oracle =
          contract_branch_moments(moments, mixed_state(r, p.preselection()), p.postselection()).dq_shift;
      const double with_factor = 2.0 * g * r * d2 * c * s1 * s2 * std::sin(p.phi0) / den;
      const double without = 2.0 * g * r * d2 * s1 * s2 * std::sin(p.phi0) / den;
      s.score(id++, with_factor, without, oracle);
    }
    s.finish();
  }

  // Maximal position shift over all PPS.
  {
    detail::DisputeScorer s(report, {"maximal position shift, modulus-r preselection",
                                     "2 r g delta^2 exp(-2 delta^2 g^2) / sqrt(1 - r^2 exp(-4 delta^2 g^2))",
                                     "2 r g delta^2 / sqrt(1 - r^2 exp(-4 delta^2 g^2))", 1e-6});
    std::vector<double> moduli{1.0};
    for (int i = 0; i < 3; ++i) moduli.push_back(0.2 + 0.8 * unit(rng));
    int id = 0;
    for (double r : moduli) {
      auto objective = [&](const PPSPoint& p) {
        try {
          return contract_branch_moments(moments, mixed_state(r, p.preselection()), p.postselection())
              .dq_shift;
        } catch (const VanishingPostselectionError&) {
          return 0.0;
        }
      };
      const double oracle = maximize(objective, opts.optimizer).value;
      const double root = std::sqrt(1.0 - r * r * c * c);
      s.score(id++, 2.0 * r * g * d2 * c / root, 2.0 * r * g * d2 / root, oracle);
    }
    s.finish();
  }

  // Maximal momentum shift under dephasing: (1 - gamma) squared or not.
  {
    detail::DisputeScorer s(report, {"maximal momentum shift, phase damping",
                                     "g / sqrt(1 - (1 - gamma)^2 exp(-4 delta^2 g^2))",
                                     "g / sqrt(1 - (1 - gamma) exp(-4 delta^2 g^2))", 1e-6});
    std::vector<double> gammas{0.5};
    for (int i = 0; i < 3; ++i) gammas.push_back(0.05 + 0.9 * unit(rng));
    int id = 0;
    for (double gamma : gammas) {
      const KrausChannel channel = phase_damping(gamma);
      auto objective = [&](const PPSPoint& p) {
        try {
          return contract_branch_moments(moments, apply(channel, p.preselection()), p.postselection())
              .dp_shift;
        } catch (const VanishingPostselectionError&) {
          return 0.0;
        }
      };
      const double oracle = maximize(objective, opts.optimizer).value;
      const double k = 1.0 - gamma;
      s.score(id++, g / std::sqrt(1.0 - k * k * c * c), g / std::sqrt(1.0 - k * c * c), oracle);
    }
    s.finish();
  }

  // Qubit-meter reading under dephasing: the first numerator term is
  // |alpha1|^2 |alpha2|^2 or, as printed, |alpha1|^2 |beta2|^2.
  {
    detail::DisputeScorer s(report, {"qubit reading numerator, phase damping",
                                     "|alpha1|^2 |alpha2|^2 + |beta1|^2 |beta2|^2 - 2 (1 - gamma) Re(x)",
                                     "|alpha1|^2 |beta2|^2 + |beta1|^2 |beta2|^2 - 2 (1 - gamma) Re(x)",
                                     1e-12});
    for (int id = 0; id < opts.inputs;) {
      const double gamma = unit(rng);
      const double gq = id == 0 ? g : 0.05 + 1.4 * unit(rng);
      const PureQubit psi_i = pure_state(pi * unit(rng), 2.0 * pi * unit(rng));
      const PureQubit psi_f = pure_state(pi * unit(rng), 2.0 * pi * unit(rng));
      const detail::PPSAmplitudes a = detail::amplitudes(psi_i, psi_f);
      const double re_x = (std::conj(a.a1) * a.b1 * a.a2 * std::conj(a.b2)).real();
      const double aa = std::norm(a.a1) * std::norm(a.a2);
      const double ab = std::norm(a.a1) * std::norm(a.b2);
      const double bb = std::norm(a.b1) * std::norm(a.b2);
      const double n2 = aa + bb + 2.0 * (1.0 - gamma) * re_x * std::cos(2.0 * gq);
      if (n2 < 1e-3) continue;
      const double s2 = std::sin(gq) * std::sin(gq);
      const double corrected = (aa + bb - 2.0 * (1.0 - gamma) * re_x) * s2 / n2;
      const double printed = (ab + bb - 2.0 * (1.0 - gamma) * re_x) * s2 / n2;
      const double oracle = qubit_joint_evolve(apply(phase_damping(gamma), psi_i), psi_f, gq).reading;
      s.score(id++, corrected, printed, oracle);
    }
    s.finish();
  }
  return report;
}

}  // namespace wmnoise
