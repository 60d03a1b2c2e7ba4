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
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wmnoise/csv.hpp"
#include "wmnoise/errors.hpp"
#include "wmnoise/gaussian_meter.hpp"
#include "wmnoise/pps_search.hpp"
#include "wmnoise/qubit_meter.hpp"

namespace wmnoise {

enum class SweepParameter { r, gamma };

/// Evenly spaced sweep over r or gamma, endpoints included.
struct SweepSpec {
  SweepParameter parameter = SweepParameter::r;
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;

  void validate() const {
    if (steps < 2) throw DomainError("sweep needs at least 2 steps");
    if (!(start < stop)) throw DomainError("sweep start must be below stop");
    if (start < 0.0 || stop > 1.0) throw DomainError("sweep range must lie within [0, 1]");
  }

  double at(int i) const {
    if (i == steps - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

struct FigureOptions {
  // Unset fields fall back to the figure's defaults.
  std::optional<int> steps;
  std::optional<double> start;
  std::optional<double> stop;
  double delta = 1.0;
  unsigned threads = 0;  // 0: hardware concurrency
  OptimizerOptions optimizer;
};

/// Couplings drawn in the figures; multiples of the pointer momentum spread
/// for the Gaussian meter and absolute for the qubit meter.
inline const std::vector<double>& figure_couplings() {
  static const std::vector<double> g{0.1, 0.05, 0.03};
  return g;
}

/// Coupling of the amplitude-damping figures.
inline constexpr double kAmplitudeDampingCoupling = 0.1;

/// Evaluates fn(i) for i < count on up to `threads` workers; results keep
/// index order.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<T> out(count);
  const std::size_t workers = std::min<std::size_t>(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

inline SweepSpec figure_sweep(int figure, const FigureOptions& opts) {
  if (figure < 1 || figure > 6) throw DomainError("figure must be 1..6");
  SweepSpec s;
  s.parameter = figure <= 2 ? SweepParameter::r : SweepParameter::gamma;
  s.steps = opts.steps.value_or(figure >= 5 ? 21 : 101);
  s.start = opts.start.value_or(0.0);
  s.stop = opts.stop.value_or(1.0);
  s.validate();
  return s;
}

namespace detail {

inline std::string coupling_label(double g) { return format_short(g); }

}  // namespace detail

/// Curve data for figures 1-6.
///
///   1: max |dp|, |dq| vs r (Gaussian meter)   2: max reading vs r (qubit meter)
///   3: as 1 vs depolarizing/dephasing gamma    4: as 2 vs depolarizing/dephasing gamma
///   5: optimizer max |dp|, |dq| vs amplitude-damping gamma, g = 0.1 dp
///   6: optimizer max reading vs amplitude-damping gamma, g = 0.1
inline Table figure_table(int figure, const FigureOptions& opts = {}) {
  const SweepSpec sweep = figure_sweep(figure, opts);
  const GaussianMeter meter(opts.delta);
  Table t;
  t.columns.push_back(sweep.parameter == SweepParameter::r ? "r" : "gamma");
  auto kappa_of = [&](double x) { return sweep.parameter == SweepParameter::r ? x : 1.0 - x; };

  if (figure == 1 || figure == 3) {
    for (double gu : figure_couplings()) {
      t.columns.push_back("dp_max_g" + detail::coupling_label(gu) + "dp");
      t.columns.push_back("dq_max_g" + detail::coupling_label(gu) + "dp");
    }
  } else if (figure == 2 || figure == 4) {
    for (double gu : figure_couplings()) t.columns.push_back("reading_max_g" + detail::coupling_label(gu));
  } else if (figure == 5) {
    t.columns.insert(t.columns.end(), {"dp_max", "dq_max"});
  } else {
    t.columns.push_back("reading_max");
  }

  t.rows = parallel_map(static_cast<std::size_t>(sweep.steps), opts.threads, [&](std::size_t i) {
    const double x = sweep.at(static_cast<int>(i));
    std::vector<double> row{x};
    switch (figure) {
      case 1:
      case 3:
        for (double gu : figure_couplings()) {
          const GaussianMaxima m = gaussian_max_shifts(kappa_of(x), gu * meter.dp(), meter);
          row.push_back(m.dp.value);
          row.push_back(m.dq.value);
        }
        break;
      case 2:
      case 4:
        for (double gu : figure_couplings()) row.push_back(qubit_max_reading(kappa_of(x), gu).value);
        break;
      case 5: {
        const double g = kAmplitudeDampingCoupling * meter.dp();
        row.push_back(amplitude_damping_max(meter, x, g, Quantity::dp, opts.optimizer).result.value);
        row.push_back(amplitude_damping_max(meter, x, g, Quantity::dq, opts.optimizer).result.value);
        break;
      }
      default:
        row.push_back(amplitude_damping_max(QubitMeter{}, x, kAmplitudeDampingCoupling, Quantity::reading,
                                            opts.optimizer)
                          .result.value);
        break;
    }
    return row;
  });
  return t;
}

}  // namespace wmnoise
