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

// wmnoise: pointer shifts, maxima, figure sweeps and verification for
// postselected weak measurements on noisy qubits.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wmnoise/wmnoise.hpp"

namespace {

using namespace wmnoise;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kVanishing = 3, kIoError = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters shared by shift / max / optimize.
struct StateArgs {
  std::string meter = "gaussian";
  std::string channel = "none";
  double gamma = 0.0;
  double r = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi0 = 0.0;
  std::optional<double> g_over_dp;
  std::optional<double> g;
  double delta = 1.0;
  std::string config;
};

void add_state_options(CLI::App* sub, StateArgs& a, bool with_pps) {
  sub->add_option("--meter", a.meter, "gaussian or qubit")
      ->check(CLI::IsMember({"gaussian", "qubit"}))
      ->capture_default_str();
  sub->add_option("--channel", a.channel, "noise on the preselection")
      ->check(CLI::IsMember({"none", "depolarizing", "phase-damping", "amplitude-damping"}))
      ->capture_default_str();
  sub->add_option("--gamma", a.gamma, "noise strength in [0, 1]")->capture_default_str();
  sub->add_option("--r", a.r, "Bloch modulus of the preselection before the channel")->capture_default_str();
  if (with_pps) {
    sub->add_option("--theta1", a.theta1, "preselection polar angle")->capture_default_str();
    sub->add_option("--theta2", a.theta2, "postselection polar angle")->capture_default_str();
    sub->add_option("--phi0", a.phi0, "relative azimuth phi1 - phi2")->capture_default_str();
  }
  sub->add_option("--g-over-dp", a.g_over_dp, "coupling in units of the pointer momentum spread (Gaussian meter)");
  sub->add_option("--g", a.g, "absolute coupling (qubit meter)");
  sub->add_option("--delta", a.delta, "pointer position spread")->capture_default_str();
  sub->add_option("--config", a.config, "key=value file; flags take precedence");
}

std::optional<ChannelKind> parse_channel(const std::string& name) {
  if (name == "depolarizing") return ChannelKind::depolarizing;
  if (name == "phase-damping") return ChannelKind::phase_damping;
  if (name == "amplitude-damping") return ChannelKind::amplitude_damping;
  return std::nullopt;
}

bool is_gaussian(const StateArgs& a) { return a.meter == "gaussian"; }

/// Absolute coupling, enforcing --g-over-dp for the Gaussian meter and --g
/// for the qubit meter.
double coupling(const StateArgs& a, const GaussianMeter& meter) {
  if (is_gaussian(a)) {
    if (a.g) throw UsageError("the Gaussian meter takes --g-over-dp, not --g");
    if (!a.g_over_dp) throw UsageError("--g-over-dp is required for the Gaussian meter");
    return *a.g_over_dp * meter.dp();
  }
  if (a.g_over_dp) throw UsageError("the qubit meter takes --g, not --g-over-dp");
  if (!a.g) throw UsageError("--g is required for the qubit meter");
  return *a.g;
}

Preparation preparation(const StateArgs& a) {
  const double r = a.r;
  if (!(r >= 0.0 && r <= 1.0)) throw UsageError("--r must lie in [0, 1]");
  const auto kind = parse_channel(a.channel);
  if (!kind) return [r](const PureQubit& psi) { return mixed_state(r, psi); };
  if (!(a.gamma >= 0.0 && a.gamma <= 1.0)) throw UsageError("--gamma must lie in [0, 1]");
  const KrausChannel ch = make_channel(*kind, a.gamma);
  return [r, ch](const PureQubit& psi) { return apply(ch, mixed_state(r, psi)); };
}

/// Echo of every option of `sub` as `key=value`, in declaration order.
Params effective_params(const CLI::App* sub) {
  Params p{{"command", sub->get_name()}};
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config") continue;
    std::string value;
    if (opt->count() > 0) {
      value = opt->results().back();
    } else {
      value = opt->get_default_str();
    }
    if (!value.empty()) p.emplace_back(name, value);
  }
  return p;
}

std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    args.push_back(trim(line.substr(0, eq)));
    args.push_back(trim(line.substr(eq + 1)));
  }
  return args;
}

/// Splices `--key value` pairs from a --config file into argv for every key
/// not already given on the command line.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  std::string path;
  CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!sub) {
      for (CLI::App* s : app.get_subcommands({})) {
        if (s->get_name() == args[i]) sub = s;
      }
    }
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || !sub) return args;
  const std::vector<std::string> kv = read_config(path);
  for (std::size_t i = 0; i < kv.size(); i += 2) {
    const std::string flag = "--" + kv[i];
    if (kv[i] == "config" || sub->get_option_no_throw(flag) == nullptr) {
      throw UsageError("unknown config key '" + kv[i] + "' for " + sub->get_name());
    }
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (!given) {
      args.push_back(flag);
      args.push_back(kv[i + 1]);
    }
  }
  return args;
}

int cmd_shift(const CLI::App* sub, const StateArgs& a) {
  const GaussianMeter meter(a.delta);
  const double g = coupling(a, meter);
  const PPSPoint p{a.theta1, a.theta2, a.phi0};
  const QubitDensity rho = preparation(a)(p.preselection());
  Table t;
  if (is_gaussian(a)) {
    const ShiftResult s = gaussian_shifts(rho, p.postselection(), g, meter);
    t.columns = {"dp_shift", "dq_shift", "prob"};
    t.rows = {{s.dp_shift, s.dq_shift, s.prob}};
  } else {
    const QubitMeterReading s = postselected_reading(rho, p.postselection(), g);
    t.columns = {"reading", "prob"};
    t.rows = {{s.reading, s.prob}};
  }
  write_csv(std::cout, effective_params(sub), t);
  return kOk;
}

double coherence(const StateArgs& a) {
  const auto kind = parse_channel(a.channel);
  if (!(a.r >= 0.0 && a.r <= 1.0)) throw UsageError("--r must lie in [0, 1]");
  if (!kind) return a.r;
  if (*kind == ChannelKind::amplitude_damping) {
    throw UsageError("amplitude damping has no closed-form maximum; use the optimize command");
  }
  if (!(a.gamma >= 0.0 && a.gamma <= 1.0)) throw UsageError("--gamma must lie in [0, 1]");
  return a.r * (1.0 - a.gamma);
}

int cmd_max(const CLI::App* sub, const StateArgs& a) {
  const GaussianMeter meter(a.delta);
  const double g = coupling(a, meter);
  const double kappa = coherence(a);
  Table t{{"quantity", "value", "theta1", "theta2", "phi0"}, {}};
  Params params = effective_params(sub);
  params.emplace_back("kappa", format_number(kappa));
  std::ostringstream body;
  if (is_gaussian(a)) {
    const GaussianMaxima m = gaussian_max_shifts(kappa, g, meter);
    body << "dp_max," << format_number(m.dp.value) << "," << format_number(m.dp.argmax.theta1) << ","
         << format_number(m.dp.argmax.theta2) << "," << format_number(m.dp.argmax.phi0) << "\n";
    body << "dq_max," << format_number(m.dq.value) << "," << format_number(m.dq.argmax.theta1) << ","
         << format_number(m.dq.argmax.theta2) << "," << format_number(m.dq.argmax.phi0) << "\n";
  } else {
    const MaxResult m = qubit_max_reading(kappa, g);
    body << "reading_max," << format_number(m.value) << "," << format_number(m.argmax.theta1) << ","
         << format_number(m.argmax.theta2) << "," << format_number(m.argmax.phi0) << "\n";
  }
  write_csv(std::cout, params, t);
  std::cout << body.str();
  return kOk;
}

int cmd_optimize(const CLI::App* sub, const StateArgs& a, const std::string& quantity, int grid_n, double tol) {
  const GaussianMeter meter(a.delta);
  const double g = coupling(a, meter);
  Quantity q = Quantity::reading;
  if (quantity == "dp") q = Quantity::dp;
  if (quantity == "dq") q = Quantity::dq;
  if (is_gaussian(a) && q == Quantity::reading) throw UsageError("the Gaussian meter reports dp or dq");
  if (!is_gaussian(a) && q != Quantity::reading) throw UsageError("the qubit meter reports reading");
  const Meter m = is_gaussian(a) ? Meter{meter} : Meter{QubitMeter{}};
  OptimizerOptions opts;
  opts.grid_n = grid_n;
  opts.tol = tol;
  const OptimizationResult res = maximize(PPSObjective(preparation(a), m, g, q), opts);
  Table t{{"value", "signed_value", "theta1", "theta2", "phi0", "evaluations", "converged"},
          {{res.value, res.signed_value, res.argmax.theta1, res.argmax.theta2, res.argmax.phi0,
            static_cast<double>(res.evaluations), res.converged ? 1.0 : 0.0}}};
  write_csv(std::cout, effective_params(sub), t);
  return kOk;
}

void write_output(const std::string& path, const Params& params, const Table& t) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, params, t);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, params, t);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_adjudication_csv(const std::string& path, const AdjudicationReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  report.to_csv(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Weak-measurement amplification under qubit noise"};
  app.name("wmnoise");
  app.require_subcommand(1);

  StateArgs shift_args, max_args, opt_args;
  auto* shift = app.add_subcommand("shift", "pointer shifts (Gaussian) or reading (qubit) for one PPS");
  add_state_options(shift, shift_args, true);

  auto* maxc = app.add_subcommand("max", "closed-form maxima over all PPS");
  add_state_options(maxc, max_args, false);

  auto* opt = app.add_subcommand("optimize", "numerical maximum over all PPS");
  add_state_options(opt, opt_args, false);
  std::string quantity = "dp";
  int grid_n = 64;
  double tol = 1e-12;
  opt->add_option("--quantity", quantity, "dp, dq or reading")
      ->check(CLI::IsMember({"dp", "dq", "reading"}))
      ->capture_default_str();
  opt->add_option("--grid-n", grid_n, "coarse grid points per axis")->check(CLI::Range(16, 512))->capture_default_str();
  opt->add_option("--tol", tol, "stop when a refinement cycle gains less than this")->capture_default_str();

  auto* fig = app.add_subcommand("fig", "curve data for figures 1-6 as CSV");
  int figure = 1;
  std::optional<int> steps;
  std::optional<double> start, stop;
  double fig_delta = 1.0;
  unsigned threads = 0;
  std::string output;
  std::string fig_config;
  fig->add_option("figure", figure, "figure number 1-6")->required()->check(CLI::Range(1, 6));
  fig->add_option("--steps", steps, "sweep points (default 101; 21 for figures 5-6)");
  fig->add_option("--start", start, "first sweep value (default 0)");
  fig->add_option("--stop", stop, "last sweep value (default 1)");
  fig->add_option("--delta", fig_delta, "pointer position spread")->capture_default_str();
  fig->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
  fig->add_option("-o,--output", output, "output CSV path (default stdout)");
  fig->add_option("--config", fig_config, "key=value file; flags take precedence");

  auto* verify = app.add_subcommand("verify", "oracle, optimizer and adjudication battery");
  std::uint64_t seed = 7;
  int samples = 1000;
  std::string csv_path = "adjudication.csv";
  std::string perturb;
  std::string verify_config;
  verify->add_option("--seed", seed, "battery seed")->capture_default_str();
  verify->add_option("--samples", samples, "random cases per oracle check")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--csv", csv_path, "adjudication table path")->capture_default_str();
  verify->add_option("--perturb", perturb, "perturb the named formula (harness hook)")
      ->check(CLI::IsMember(Formulas::names()))
      ->group("");
  verify->add_option("--config", verify_config, "key=value file; flags take precedence");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(app, args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*shift) return cmd_shift(shift, shift_args);
    if (*maxc) return cmd_max(maxc, max_args);
    if (*opt) return cmd_optimize(opt, opt_args, quantity, grid_n, tol);
    if (*fig) {
      FigureOptions fo;
      fo.steps = steps;
      fo.start = start;
      fo.stop = stop;
      fo.delta = fig_delta;
      fo.threads = threads;
      const Table t = figure_table(figure, fo);
      const SweepSpec s = figure_sweep(figure, fo);
      Params params = effective_params(fig);
      params.emplace_back("sweep", s.parameter == SweepParameter::r ? "r" : "gamma");
      params.emplace_back("sweep_start", format_number(s.start));
      params.emplace_back("sweep_stop", format_number(s.stop));
      params.emplace_back("sweep_steps", std::to_string(s.steps));
      write_output(output, params, t);
      return kOk;
    }
    if (*verify) {
      VerifyOptions vo;
      vo.seed = seed;
      vo.samples = samples;
      vo.perturb = perturb;
      const VerifyReport report = run_verification(vo);
      std::cout << report.to_text();
      write_adjudication_csv(csv_path, report.adjudication);
      return report.passed() ? kOk : kVerifyFailed;
    }
  } catch (const VanishingPostselectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVanishing;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
