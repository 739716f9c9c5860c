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

#include "sfqopt/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "sfqopt/adjoint.hpp"
#include "sfqopt/errors.hpp"
#include "sfqopt/finite_difference.hpp"
#include "sfqopt/io.hpp"
#include "sfqopt/qmodel.hpp"

namespace sfqopt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_plain_real(const std::string& text, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParseError(line, "expected a number, got '" + text + "'");
  return v;
}

// "0.25", "1e-2" or "1/300"
double parse_real(const std::string& text, int line) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain_real(text, line);
  const double num = parse_plain_real(trim(text.substr(0, slash)), line);
  const double den = parse_plain_real(trim(text.substr(slash + 1)), line);
  if (den == 0.0) throw ParseError(line, "division by zero in '" + text + "'");
  return num / den;
}

long long parse_integer(const std::string& text, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParseError(line, "expected an integer, got '" + text + "'");
  return v;
}

int parse_int(const std::string& text, int line) {
  const long long v = parse_integer(text, line);
  if (v < -2147483647LL || v > 2147483647LL) throw ParseError(line, "integer out of range: " + text);
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& text, int line) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError(line, "empty entry in list '" + text + "'");
    out.push_back(parse_real(item, line));
  }
  return out;
}

// SystemConfig field names mapped back to config-file keys for messages.
std::string config_key(const std::string& field) {
  static const std::map<std::string, std::string> names{
      {"omega", "omega_over_2pi_ghz"}, {"xi", "xi_over_2pi_ghz"},   {"tau_p", "tau_p_ns"},
      {"delta", "delta_ns"},           {"theta", "theta_over_pi"},
  };
  const auto it = names.find(field);
  return it == names.end() ? field : it->second;
}

std::string format_summary(const ExperimentSpec& spec, std::size_t p, const ObjectiveValue& v, double top) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "gate=%s p=%zu T_ns=%.6g J=%.6e J1=%.6e J2=%.6e max_pop_top=%.6e",
                std::string(to_string(spec.gate)).c_str(), p, static_cast<double>(p) * spec.system.tau_p, v.j,
                v.j1, v.j2, top);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

SweepRow sweep_point(const PropagatorSet& props, const GateTarget& target, const ExperimentSpec& spec, int p) {
  const GateObjective objective(props, target, spec.system);
  const MultiRestartResult r = serial::multi_restart(objective, static_cast<std::size_t>(p), spec.n_restarts,
                                                     spec.seed, spec.trust_region());
  return SweepRow{p, p * spec.system.tau_p, r.best.value};
}

}  // namespace

GateKind parse_gate(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "h") return GateKind::H;
  if (n == "x") return GateKind::X;
  if (n == "y") return GateKind::Y;
  if (n == "z") return GateKind::Z;
  if (n == "i" || n == "identity") return GateKind::Identity;
  if (n == "custom" || n == "customfile") return GateKind::CustomFile;
  throw ValidationError("gate", "unknown gate '" + std::string(name) + "'");
}

std::string_view to_string(GateKind gate) {
  switch (gate) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::Y:
      return "Y";
    case GateKind::Z:
      return "Z";
    case GateKind::Identity:
      return "Identity";
    case GateKind::CustomFile:
      return "Custom";
  }
  return "?";
}

std::vector<int> SweepRange::grid() const {
  std::vector<int> g;
  for (int p = p_min; p <= p_max; p += p_stride) g.push_back(p);
  return g;
}

void ExperimentSpec::validate() const {
  try {
    system.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(config_key(e.key()), std::string(e.what()).substr(e.key().size() + 2));
  }
  if (p < 1) throw ValidationError("p", "must be at least 1");
  if (n_restarts < 1) throw ValidationError("n_restarts", "must be at least 1");
  if (!(rho_hat > 0.0 && rho_hat < 1.0)) throw ValidationError("rho_hat", "must lie in (0, 1)");
  if (delta0 < 0) throw ValidationError("delta0", "must be >= 1 (or 0 for p)");
  if (max_iter < 1) throw ValidationError("max_iter", "must be at least 1");
  if (gate != GateKind::CustomFile && system.n_essential != 2) {
    throw ValidationError("n_essential", "built-in gates need n_essential = 2");
  }
  if (gate == GateKind::CustomFile && gate_file.empty()) {
    throw ValidationError("gate_file", "custom gate needs a gate_file");
  }
  if (sweep) {
    if (sweep->p_min < 1) throw ValidationError("sweep_p_min", "must be at least 1");
    if (sweep->p_max < sweep->p_min) throw ValidationError("sweep_p_max", "smaller than sweep_p_min");
    if (sweep->p_stride < 1) throw ValidationError("sweep_p_stride", "must be at least 1");
  }
}

ExperimentSpec parse_config(std::istream& in) {
  ExperimentSpec spec;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");

    SystemConfig& s = spec.system;
    auto sweep = [&]() -> SweepRange& {
      if (!spec.sweep) spec.sweep.emplace();
      return *spec.sweep;
    };
    if (key == "omega_over_2pi_ghz") {
      s.omega = kTwoPi * parse_real(value, line_no);
    } else if (key == "xi_over_2pi_ghz") {
      s.xi = kTwoPi * parse_real(value, line_no);
    } else if (key == "tau_p_ns") {
      s.tau_p = parse_real(value, line_no);
    } else if (key == "delta_ns") {
      s.delta = parse_real(value, line_no);
    } else if (key == "theta_over_pi") {
      s.theta = std::numbers::pi * parse_real(value, line_no);
    } else if (key == "n_levels") {
      s.n_levels = parse_int(value, line_no);
    } else if (key == "n_essential") {
      s.n_essential = parse_int(value, line_no);
    } else if (key == "guard_weights") {
      s.guard_weights = parse_list(value, line_no);
    } else if (key == "c1") {
      s.c1 = parse_real(value, line_no);
    } else if (key == "substeps") {
      s.substeps = parse_int(value, line_no);
    } else if (key == "gate") {
      try {
        spec.gate = parse_gate(value);
      } catch (const ValidationError&) {
        throw ParseError(line_no, "unknown gate '" + value + "'");
      }
    } else if (key == "gate_file") {
      spec.gate_file = value;
    } else if (key == "p") {
      spec.p = parse_int(value, line_no);
    } else if (key == "n_restarts") {
      spec.n_restarts = parse_int(value, line_no);
    } else if (key == "seed") {
      const long long v = parse_integer(value, line_no);
      if (v < 0) throw ParseError(line_no, "seed must be non-negative");
      spec.seed = static_cast<std::uint64_t>(v);
    } else if (key == "rho_hat") {
      spec.rho_hat = parse_real(value, line_no);
    } else if (key == "delta0") {
      spec.delta0 = parse_int(value, line_no);
    } else if (key == "max_iter") {
      spec.max_iter = parse_int(value, line_no);
    } else if (key == "output_dir") {
      spec.output_dir = value;
    } else if (key == "sweep_p_min") {
      sweep().p_min = parse_int(value, line_no);
    } else if (key == "sweep_p_max") {
      sweep().p_max = parse_int(value, line_no);
    } else if (key == "sweep_p_stride") {
      sweep().p_stride = parse_int(value, line_no);
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_config(in);
}

ComplexMatrix builtin_gate(GateKind gate) {
  const Complex i(0.0, 1.0);
  ComplexMatrix v(2, 2);
  switch (gate) {
    case GateKind::H:
      v << 1.0, 1.0, 1.0, -1.0;
      v /= std::sqrt(2.0);
      break;
    case GateKind::X:
      v << 0.0, 1.0, 1.0, 0.0;
      break;
    case GateKind::Y:
      v << 0.0, -i, i, 0.0;
      break;
    case GateKind::Z:
      v << 1.0, 0.0, 0.0, -1.0;
      break;
    case GateKind::Identity:
      v = ComplexMatrix::Identity(2, 2);
      break;
    case GateKind::CustomFile:
      throw DomainError("custom gates are read from a file");
  }
  return v;
}

GateTarget gate_target(const ExperimentSpec& spec) {
  if (spec.gate == GateKind::CustomFile) {
    const ComplexMatrix v = read_gate_file(spec.gate_file);
    if (v.rows() != spec.system.n_essential) {
      throw NonUnitaryTarget("gate file is " + std::to_string(v.rows()) + "x" + std::to_string(v.rows()) +
                             " but n_essential is " + std::to_string(spec.system.n_essential));
    }
    // printed decimals rarely reach 1e-12
    return GateTarget::embed(v, spec.system.n_levels, 1e-9);
  }
  return GateTarget::embed(builtin_gate(spec.gate), spec.system.n_levels);
}

double max_top_level_population(const ForwardTrajectory& traj, int n_essential) {
  double top = 0.0;
  for (const auto& u : traj.snapshots) {
    for (int a = 0; a < n_essential; ++a) top = std::max(top, std::norm(u(u.rows() - 1, a)));
  }
  return top;
}

OptimizeReport run_optimize(const ExperimentSpec& spec) {
  spec.validate();
  const GateTarget target = gate_target(spec);
  const PropagatorSet props = precompute_propagators(spec.system);
  const GateObjective objective(props, target, spec.system);

  OptimizeReport report;
  report.result = multi_restart(objective, static_cast<std::size_t>(spec.p), spec.n_restarts, spec.seed,
                                spec.trust_region());
  const ForwardTrajectory traj = propagate(report.result.best.alpha, props, true);
  const int e = target.n_essential();
  report.max_top_population = max_top_level_population(traj, e);
  report.summary = format_summary(spec, report.result.best.alpha.size(), report.result.best.value,
                                  report.max_top_population) +
                   " best_restart=" + std::to_string(report.result.best_index) +
                   " accepted=" + std::to_string(report.result.best.trace.accepted_steps()) +
                   " terminal=" + std::string(to_string(report.result.best.trace.terminal_reason));

  ensure_dir(spec.output_dir);
  write_barcode(spec.output_dir / "pulses.txt", report.result.best.alpha);
  write_populations_csv(spec.output_dir / "populations.csv", traj, spec.system.tau_p, e);
  write_convergence_csv(spec.output_dir / "convergence.csv", report.result.best.trace);
  write_restarts_csv(spec.output_dir / "restarts.csv", report.result.summaries);
  write_text(spec.output_dir / "summary.txt", report.summary + "\n");
  return report;
}

std::vector<SweepRow> sweep_points(const ExperimentSpec& spec, const std::vector<int>& grid) {
  spec.validate();
  const GateTarget target = gate_target(spec);
  const PropagatorSet props = precompute_propagators(spec.system);
  std::vector<SweepRow> rows(grid.size());
  const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) rows[i] = sweep_point(props, target, spec, grid[i]);
  return rows;
}

namespace serial {

std::vector<SweepRow> sweep_points(const ExperimentSpec& spec, const std::vector<int>& grid) {
  spec.validate();
  const GateTarget target = gate_target(spec);
  const PropagatorSet props = precompute_propagators(spec.system);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (int p : grid) rows.push_back(sweep_point(props, target, spec, p));
  return rows;
}

}  // namespace serial

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "p,T_ns,best_J1,best_J2,best_J\n";
  for (const auto& r : rows) {
    out << r.p << ',' << format_number(r.t_ns) << ',' << format_number(r.best.j1) << ','
        << format_number(r.best.j2) << ',' << format_number(r.best.j) << '\n';
  }
  write_text(path, out.str());
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
  if (!spec.sweep) throw ValidationError("sweep_p_min", "no sweep range configured");
  spec.validate();
  const std::vector<SweepRow> rows = sweep_points(spec, spec.sweep->grid());
  ensure_dir(spec.output_dir);
  write_sweep_csv(spec.output_dir / "sweep.csv", rows);
  return rows;
}

GradCheckReport run_grad_check(const ExperimentSpec& spec, int p_check, double h, std::ostream& log) {
  spec.validate();
  if (p_check < 1 || p_check > 64) throw ValidationError("p_check", "must lie in [1, 64]");
  if (!(h > 0.0)) throw ValidationError("h", "must be positive");

  const GateTarget target = gate_target(spec);
  const PropagatorSet props = precompute_propagators(spec.system);
  const PulseSequence alpha = random_initial_guesses(1, static_cast<std::size_t>(p_check), spec.seed).front();

  const ForwardTrajectory traj = propagate(alpha, props, true);
  const GradientVector g1 = grad_infidelity(traj, alpha, props, target);
  const GradientVector g2 = grad_leakage(traj, alpha, props, guard_weight_diagonal(spec.system), target.n_essential());
  const GradientVector g = grad_total(alpha, props, target, spec.system);

  const FiniteDifferenceGradient fd(spec.system, target, h);
  const GradientParts f = fd(alpha);

  GradCheckReport report;
  report.adjoint = g;
  report.finite_difference = f.j;
  const GradientComparison total = compare_gradients(g, f.j, kGradCheckAbsFloor);
  report.relative_errors = total.relative_errors;
  report.max_relative_error = total.max_relative_error;
  report.max_relative_error_j1 = compare_gradients(g1, f.j1, kGradCheckAbsFloor).max_relative_error;
  const bool j2_zero = std::all_of(g2.begin(), g2.end(), [](double v) { return v == 0.0; });
  if (!j2_zero) report.max_relative_error_j2 = compare_gradients(g2, f.j2, kGradCheckAbsFloor).max_relative_error;

  char buf[160];
  log << "alpha = " << alpha.to_string() << "  h = " << h << '\n';
  log << "    k           adjoint   finite difference     rel. error\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%5zu  %16.9e  %18.9e  %13.3e\n", k + 1, g[k], f.j[k], report.relative_errors[k]);
    log << buf;
  }
  std::snprintf(buf, sizeof buf, "max relative error: J %.3e  J1 %.3e", report.max_relative_error,
                report.max_relative_error_j1);
  log << buf;
  if (report.max_relative_error_j2) {
    std::snprintf(buf, sizeof buf, "  J2 %.3e\n", *report.max_relative_error_j2);
    log << buf;
  } else {
    log << "  J2 gradient identically zero (skipped)\n";
  }
  report.passed = report.max_relative_error < kGradCheckThreshold && report.max_relative_error_j1 < kGradCheckThreshold &&
                  report.max_relative_error_j2.value_or(0.0) < kGradCheckThreshold;
  return report;
}

SimulateReport run_simulate(const ExperimentSpec& spec, const std::filesystem::path& barcode) {
  spec.validate();
  const PulseSequence alpha = read_barcode(barcode);
  const GateTarget target = gate_target(spec);
  const PropagatorSet props = precompute_propagators(spec.system);
  const ForwardTrajectory traj = propagate(alpha, props, true);
  const int e = target.n_essential();

  SimulateReport report;
  report.value.j1 = infidelity(traj.final(), target);
  report.value.j2 = leakage(traj, guard_weight_diagonal(spec.system), e);
  report.value.j = report.value.j1 + spec.system.c1 * report.value.j2;
  report.max_top_population = max_top_level_population(traj, e);
  report.summary = format_summary(spec, alpha.size(), report.value, report.max_top_population);

  ensure_dir(spec.output_dir);
  write_populations_csv(spec.output_dir / "populations.csv", traj, spec.system.tau_p, e);
  write_text(spec.output_dir / "summary.txt", report.summary + "\n");
  return report;
}

}  // namespace sfqopt
