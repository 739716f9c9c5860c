// Copyright 2026 The sfqopt Authors
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

// sfqopt: synthesize SFQ pulse sequences for single-qubit gates.
//
// Exit codes: 0 success, 1 config or I/O error, 2 numerical failure,
// 3 check threshold not met.

#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sfqopt/errors.hpp"
#include "sfqopt/experiment.hpp"
#include "sfqopt/io.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kNumericalFailure = 2, kThresholdFailure = 3 };

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<std::string> out;
  std::optional<std::string> gate;
  std::optional<std::string> gate_file;
  std::optional<int> p;
  std::optional<std::string> theta_over_pi;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Key-value config file");
  cmd->add_option("--seed", f.seed, "Random seed for the initial guesses");
  cmd->add_option("--restarts", f.restarts, "Number of random restarts");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--gate", f.gate, "H, X, Y, Z, Identity or Custom");
  cmd->add_option("--gate-file", f.gate_file, "E x E gate matrix for --gate Custom");
  cmd->add_option("--p", f.p, "Number of SFQ time steps");
  cmd->add_option("--theta-over-pi", f.theta_over_pi, "Tip angle divided by pi, e.g. 1/300");
}

double parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

sfqopt::ExperimentSpec build_spec(const CommonFlags& f) {
  sfqopt::ExperimentSpec spec = f.config.empty() ? sfqopt::ExperimentSpec{} : sfqopt::load_config(f.config);
  if (f.seed) spec.seed = *f.seed;
  if (f.restarts) spec.n_restarts = *f.restarts;
  if (f.out) spec.output_dir = *f.out;
  if (f.gate) spec.gate = sfqopt::parse_gate(*f.gate);
  if (f.gate_file) {
    spec.gate_file = *f.gate_file;
    if (!f.gate) spec.gate = sfqopt::GateKind::CustomFile;
  }
  if (f.p) spec.p = *f.p;
  if (f.theta_over_pi) {
    try {
      spec.system.theta = std::numbers::pi * parse_fraction(*f.theta_over_pi);
    } catch (const std::exception&) {
      throw sfqopt::ValidationError("theta_over_pi", "cannot parse '" + *f.theta_over_pi + "'");
    }
  }
  spec.validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary trust-region optimisation of SFQ pulse sequences"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* optimize = app.add_subcommand("optimize", "Multi-restart optimisation at fixed p");
  add_common(optimize, flags);

  auto* sweep = app.add_subcommand("sweep", "Best infidelity over a grid of gate durations");
  add_common(sweep, flags);
  std::optional<int> p_min, p_max, p_stride;
  sweep->add_option("--p-min", p_min, "First p of the grid");
  sweep->add_option("--p-max", p_max, "Last p of the grid");
  sweep->add_option("--p-stride", p_stride, "Grid stride");

  auto* grad_check = app.add_subcommand("grad-check", "Adjoint gradient vs central finite differences");
  add_common(grad_check, flags);
  grad_check->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  int p_check = 16;
  double h = 1e-5;
  grad_check->add_option("--p-check", p_check, "Length of the random test sequence (<= 64)");
  grad_check->add_option("--h", h, "Finite-difference step");

  auto* simulate = app.add_subcommand("simulate", "Forward run of a barcode file");
  add_common(simulate, flags);
  std::string barcode;
  simulate->add_option("barcode", barcode, "File with one line of 0/1 characters")->required();

  auto* target_print = app.add_subcommand("target-print", "Print the embedded target gate");
  add_common(target_print, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version report success; any other usage error is a config error
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    sfqopt::ExperimentSpec spec = build_spec(flags);

    if (*optimize) {
      const auto report = sfqopt::run_optimize(spec);
      std::cout << report.summary << '\n';
    } else if (*sweep) {
      if (!spec.sweep) spec.sweep.emplace();
      if (p_min) spec.sweep->p_min = *p_min;
      if (p_max) spec.sweep->p_max = *p_max;
      if (p_stride) spec.sweep->p_stride = *p_stride;
      const auto rows = sfqopt::run_sweep(spec);
      for (const auto& r : rows) {
        std::cout << "p=" << r.p << " T_ns=" << r.t_ns << " J1=" << r.best.j1 << " J2=" << r.best.j2
                  << " J=" << r.best.j << '\n';
      }
    } else if (*grad_check) {
      const auto report = sfqopt::run_grad_check(spec, p_check, h, std::cout);
      if (!report.passed) {
        std::cerr << "gradient check failed: max relative error " << report.max_relative_error
                  << " >= " << sfqopt::kGradCheckThreshold << '\n';
        return kThresholdFailure;
      }
    } else if (*simulate) {
      const auto report = sfqopt::run_simulate(spec, barcode);
      std::cout << report.summary << '\n';
    } else if (*target_print) {
      const auto target = sfqopt::gate_target(spec);
      std::cout << sfqopt::format_matrix(target.embedded);
    }
  } catch (const sfqopt::IntegratorDivergence& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const sfqopt::SfqError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
