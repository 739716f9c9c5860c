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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "sfqopt/adjoint.hpp"
#include "sfqopt/experiment.hpp"
#include "sfqopt/restart.hpp"
#include "sfqopt/trust_region.hpp"

using namespace sfqopt;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SystemConfig config_for(double theta) {
  SystemConfig cfg;
  cfg.theta = theta;
  return cfg;
}

// One gate / tip-angle combination with its propagators.
struct Problem {
  std::string name;
  GateKind gate;
  double theta;
  SystemConfig cfg;
  PropagatorSet props;
  GateTarget target;
  Problem(std::string n, GateKind g, double th)
      : name(std::move(n)), gate(g), theta(th), cfg(config_for(th)), props(precompute_propagators(cfg)),
        target(GateTarget::embed(builtin_gate(g), cfg.n_levels)) {}
};

struct ProtocolRun {
  MultiRestartResult result;
  ForwardTrajectory trajectory;
  double top_population = 0.0;
};

constexpr std::size_t kProtocolP = 1600;
constexpr int kRestarts = 10;
constexpr std::uint64_t kSeed = 1;

ProtocolRun run_protocol(const Problem& pr) {
  const GateObjective obj(pr.props, pr.target, pr.cfg);
  ProtocolRun run;
  run.result = multi_restart(obj, kProtocolP, kRestarts, kSeed);
  run.trajectory = propagate(run.result.best.alpha, pr.props, true);
  run.top_population = max_top_level_population(run.trajectory, 2);
  return run;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const SystemConfig cfg;
  const PropagatorSet props = precompute_propagators(cfg);
  const double runtime = seconds_since(t0);
  const double defect = unitarity_defect(props.d1);
  SystemConfig fine = cfg;
  fine.substeps *= 2;
  const double change = (integrate_step(fine, 1.0, false).propagator - props.d1).cwiseAbs().maxCoeff();
  const bool ok = defect < 1e-10 && change < 1e-8 && runtime < 1.0;
  report(1, ok, "propagator unitarity and substep convergence",
         "defect " + fmt("%.2e", defect) + ", doubling change " + fmt("%.2e", change) + ", precompute " +
             fmt("%.3f", runtime) + " s");
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const SystemConfig cfg;
  const PropagatorSet props = precompute_propagators(cfg);
  const GateTarget target = GateTarget::embed(builtin_gate(GateKind::H), cfg.n_levels);
  std::mt19937_64 rng(20);
  double worst = 0.0, worst_abs = 0.0;
  for (int instance = 0; instance < 20; ++instance) {
    const PulseSequence a = testing::random_sequence(rng, 16);
    const GradientVector g = grad_total(a, props, target, cfg);
    const auto fd = testing::relaxed_fd_gradient(a, target.v_essential, cfg, 1e-5);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double diff = std::abs(g[k] - fd[k].j);
      worst_abs = std::max(worst_abs, diff);
      worst = std::max(worst, diff <= 1e-10 ? 0.0 : diff / std::abs(fd[k].j));
    }
  }
  report(2, worst < 1e-5, "adjoint gradient vs central differences, 20 instances, p = 16",
         "max rel. error " + fmt("%.2e", worst) + " (floor 1e-10), max abs. diff " + fmt("%.2e", worst_abs) + ", " + fmt("%.1f", seconds_since(t0)) + " s");
}

void criterion3() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  int mismatches = 0, checks = 0;
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t p = 1 + instance % 12;
    const PulseSequence a = testing::random_sequence(rng, p);
    std::vector<int> ints(p);
    for (std::size_t j = 0; j < p; ++j) ints[j] = a[j];
    GradientVector g(p);
    for (auto& x : g) x = normal(rng);
    for (int radius = 1; radius <= static_cast<int>(p); ++radius) {
      const PulseSequence out = solve_subproblem(a, g, radius);
      const bool in_ball = hamming_distance(out, a) <= static_cast<std::size_t>(radius);
      if (!in_ball || linear_model_change(a, g, out) != testing::brute_force_ball_minimum(ints, g, radius))
        ++mismatches;
      ++checks;
    }
  }
  report(3, mismatches == 0, "knapsack sub-problem vs Hamming-ball enumeration, 100 instances",
         std::to_string(checks) + " radius checks, " + std::to_string(mismatches) + " mismatches");
}

}  // namespace

int main() {
  std::printf("acceptance run: p = %zu, %d restarts, seed %llu\n", kProtocolP, kRestarts,
              static_cast<unsigned long long>(kSeed));
  criterion1();
  criterion2();
  criterion3();

  const Problem h300("H pi/300", GateKind::H, kPi / 300), h100("H pi/100", GateKind::H, kPi / 100);
  const Problem x300("X pi/300", GateKind::X, kPi / 300), x100("X pi/100", GateKind::X, kPi / 100);

  auto t0 = std::chrono::steady_clock::now();
  const ProtocolRun rh300 = run_protocol(h300);
  {
    const double j1 = rh300.result.best.value.j1;
    const std::size_t accepted = rh300.result.best.trace.accepted_steps();
    report(4, j1 < 1e-4 && accepted <= 60, "H gate, theta = pi/300, T = 40 ns: J1 < 1e-4 within 60 accepted steps",
           "J1 " + fmt("%.3e", j1) + ", " + std::to_string(accepted) + " accepted of " +
               std::to_string(rh300.result.best.trace.records.size()) + " iterations, " +
               fmt("%.1f", seconds_since(t0)) + " s");
  }

  t0 = std::chrono::steady_clock::now();
  const ProtocolRun rh100 = run_protocol(h100), rx300 = run_protocol(x300), rx100 = run_protocol(x100);
  {
    const double a = rh100.result.best.value.j1, b = rx300.result.best.value.j1, c = rx100.result.best.value.j1;
    report(5, a < 1e-3 && b < 1e-3 && c < 1e-3, "H pi/100, X pi/300, X pi/100: J1 < 1e-3",
           "J1 " + fmt("%.3e", a) + " / " + fmt("%.3e", b) + " / " + fmt("%.3e", c) + ", " +
               fmt("%.1f", seconds_since(t0)) + " s");
  }
  {
    const double t_h300 = rh300.top_population, t_x300 = rx300.top_population;
    const double t_h100 = rh100.top_population, t_x100 = rx100.top_population;
    const bool ok = t_h300 < 1e-2 && t_x300 < 1e-2 && t_h100 < 1e-1 && t_x100 < 1e-1;
    report(6, ok, "max |3> population at the optimum: < 1e-2 at pi/300, < 1e-1 at pi/100",
           "H " + fmt("%.2e", t_h300) + " / " + fmt("%.2e", t_h100) + ", X " + fmt("%.2e", t_x300) + " / " +
               fmt("%.2e", t_x100));
  }

  // Coarse duration sweep, stride 80 from p = 8 up to each bound.
  {
    t0 = std::chrono::steady_clock::now();
    struct SweepCase {
      const Problem* problem;
      double bound_ns;
    };
    bool ok = true;
    std::string detail;
    for (const SweepCase& sc : {SweepCase{&h300, 34.0}, SweepCase{&h100, 14.0}, SweepCase{&x300, 30.0},
                                SweepCase{&x100, 12.0}}) {
      ExperimentSpec spec;
      spec.gate = sc.problem->gate;
      spec.system = sc.problem->cfg;
      spec.n_restarts = kRestarts;
      spec.seed = kSeed;
      const int p_max = static_cast<int>(std::floor(sc.bound_ns / spec.system.tau_p + 1e-9));
      const std::vector<SweepRow> rows = sweep_points(spec, SweepRange{8, p_max, 80}.grid());
      double first = -1.0;
      for (const auto& r : rows) {
        if (r.best.j1 < 1e-3) {
          first = r.t_ns;
          break;
        }
      }
      ok = ok && first > 0.0 && first <= sc.bound_ns;
      if (!detail.empty()) detail += ", ";
      detail += sc.problem->name + " " + (first > 0.0 ? fmt("%.1f", first) + " ns" : std::string("none")) +
                " (<= " + fmt("%.0f", sc.bound_ns) + ")";
    }
    detail += ", " + fmt("%.1f", seconds_since(t0)) + " s";
    report(7, ok, "shortest duration with J1 < 1e-3 on the stride-80 grid", detail);
  }

  // Property suite on the protocol problems.
  {
    std::string broken;
    const GateObjective obj(h300.props, h300.target, h300.cfg);
    const auto guesses = random_initial_guesses(kRestarts, kProtocolP, kSeed);
    int stationary_checked = 0, exhausted = 0;
    // the p = 1600 restarts, plus short sequences that tend to end with no improving flip
    std::vector<PulseSequence> starts = guesses;
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) starts.push_back(testing::random_sequence(rng, 2 + i % 40));
    for (const auto& guess : starts) {
      const OptimizationResult res = optimize(guess, obj);
      if (res.trace.terminal_reason == TerminalReason::RadiusExhausted) ++exhausted;
      double last = res.trace.initial.j;
      for (const auto& rec : res.trace.records) {
        if (!rec.accepted) continue;
        if (!(rec.value.j <= last)) broken = "monotone";
        last = rec.value.j;
      }
      if (res.trace.terminal_reason == TerminalReason::NoImprovingFlip) {
        ++stationary_checked;
        const GradientVector g = obj.value_and_gradient(res.alpha).gradient;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if ((res.alpha[j] ? -g[j] : g[j]) < 0.0) broken = "stationarity";
        }
      }
    }
    for (const ProtocolRun* run : {&rh300, &rh100, &rx300, &rx100}) {
      for (const auto& u : run->trajectory.snapshots) {
        if ((u.colwise().norm().array() - 1.0).abs().maxCoeff() > 1e-8) broken = "population";
      }
      const ComplexMatrix& u = run->trajectory.final();
      for (double phi : {0.3, 1.7, -2.9}) {
        const GateTarget& t = (run == &rh300 || run == &rh100) ? h300.target : x300.target;
        if (std::abs(infidelity(std::polar(1.0, phi) * u, t) - infidelity(u, t)) > 1e-12) broken = "phase";
      }
    }
    const MultiRestartResult again = multi_restart(obj, kProtocolP, kRestarts, kSeed);
    const MultiRestartResult serial_run = serial::multi_restart(obj, kProtocolP, kRestarts, kSeed);
    if (!(again.best.alpha == rh300.result.best.alpha) || !(serial_run.best.alpha == rh300.result.best.alpha) ||
        again.best.value.j != rh300.result.best.value.j)
      broken = "determinism";
    report(8, broken.empty(),
           "properties: monotone traces, phase invariance, population, stationarity, determinism",
           broken.empty() ? std::to_string(starts.size()) + " runs, " + std::to_string(stationary_checked) +
                                " no-improving-flip terminations checked for stationarity, " +
                                std::to_string(exhausted) + " radius-exhausted"
                          : "violated: " + broken);
  }

  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
