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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfqopt/objective.hpp"
#include "sfqopt/restart.hpp"
#include "sfqopt/system_config.hpp"

namespace sfqopt {

enum class GateKind { H, X, Y, Z, Identity, CustomFile };

/// Accepts H, X, Y, Z, I / Identity and Custom (case-insensitive).
GateKind parse_gate(std::string_view name);
std::string_view to_string(GateKind gate);

struct SweepRange {
  int p_min = 8;
  int p_max = 1600;
  int p_stride = 8;

  std::vector<int> grid() const;
};

/// Everything one CLI run needs. Defaults are the transmon parameters used
/// throughout (5 GHz, 0.25 GHz anharmonicity, 25 ps SFQ step, 4 ps pulse,
/// 40 ns H gate with 10 restarts).
struct ExperimentSpec {
  GateKind gate = GateKind::H;
  std::filesystem::path gate_file;  ///< used when gate is CustomFile
  SystemConfig system;
  int p = 1600;
  int n_restarts = 10;
  std::uint64_t seed = 1;
  double rho_hat = 0.75;
  int delta0 = 0;  ///< 0 means p
  int max_iter = 500;
  std::filesystem::path output_dir = ".";
  std::optional<SweepRange> sweep;

  TrustRegionOptions trust_region() const { return {delta0, rho_hat, max_iter}; }

  /// Throws ValidationError naming the config key at fault.
  void validate() const;
};

/// Flat "key = value" text, '#' starts a comment. Reals accept "a/b".
/// Missing keys keep their defaults. Throws ParseError with the line
/// number, or ValidationError with the key.
ExperimentSpec parse_config(std::istream& in);
ExperimentSpec load_config(const std::filesystem::path& path);

/// Built-in E = 2 gate matrices.
ComplexMatrix builtin_gate(GateKind gate);

/// Embedded target for the experiment's gate; reads and checks the custom file
/// when needed (NonUnitaryTarget on failure).
GateTarget gate_target(const ExperimentSpec& spec);

/// Largest population of the top level N-1 over all snapshots and initial
/// essential states.
double max_top_level_population(const ForwardTrajectory& traj, int n_essential);

struct OptimizeReport {
  MultiRestartResult result;
  double max_top_population = 0.0;
  std::string summary;
};

/// Precomputes propagators, runs the restarts and writes pulses.txt,
/// populations.csv, convergence.csv, restarts.csv and summary.txt into
/// spec.output_dir.
OptimizeReport run_optimize(const ExperimentSpec& spec);

struct SweepRow {
  int p = 0;
  double t_ns = 0.0;
  ObjectiveValue best;
};

/// Full restart protocol at every p of `grid`, sharing one propagator set.
/// Grid points run concurrently; each point uses the experiment's seed, so a row
/// equals run_optimize at that p.
std::vector<SweepRow> sweep_points(const ExperimentSpec& spec, const std::vector<int>& grid);

namespace serial {
std::vector<SweepRow> sweep_points(const ExperimentSpec& spec, const std::vector<int>& grid);
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// sweep_points over spec.sweep->grid(), written to sweep.csv.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec);

struct GradCheckReport {
  std::vector<double> adjoint;
  std::vector<double> finite_difference;
  std::vector<double> relative_errors;
  double max_relative_error = 0.0;     ///< total gradient
  double max_relative_error_j1 = 0.0;
  std::optional<double> max_relative_error_j2;  ///< empty when the J2 gradient is identically zero
  bool passed = false;
};

inline constexpr double kGradCheckThreshold = 1e-4;
inline constexpr double kGradCheckAbsFloor = 1e-10;

/// Random alpha of length p_check (seeded from spec.seed), adjoint vs
/// central differences with step h. Writes a per-coordinate table to `log`.
GradCheckReport run_grad_check(const ExperimentSpec& spec, int p_check, double h, std::ostream& log);

struct SimulateReport {
  ObjectiveValue value;
  double max_top_population = 0.0;
  std::string summary;
};

/// Forward-only run of a barcode file; writes populations.csv and
/// summary.txt into spec.output_dir.
SimulateReport run_simulate(const ExperimentSpec& spec, const std::filesystem::path& barcode);

}  // namespace sfqopt
