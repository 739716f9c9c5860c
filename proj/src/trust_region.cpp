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

#include "sfqopt/trust_region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfqopt/errors.hpp"

namespace sfqopt {

ObjectiveValue GateObjective::value(const PulseSequence& alpha) const {
  return total_objective(alpha, props_, target_, cfg_);
}

ValueAndGradient GateObjective::value_and_gradient(const PulseSequence& alpha) const {
  return sfqopt::value_and_gradient(alpha, props_, target_, cfg_);
}

PulseSequence solve_subproblem(const PulseSequence& alpha_k, const GradientVector& g, int radius) {
  const std::size_t p = alpha_k.size();
  if (g.size() != p) throw DomainError("gradient length does not match the pulse sequence");
  if (radius < 1) throw DomainError("trust-region radius must be at least 1");

  std::vector<double> gain(p);
  for (std::size_t j = 0; j < p; ++j) gain[j] = alpha_k[j] ? -g[j] : g[j];

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gain[a] < gain[b] || (gain[a] == gain[b] && a < b);
  });

  PulseSequence out = alpha_k;
  const std::size_t budget = std::min<std::size_t>(static_cast<std::size_t>(radius), p);
  for (std::size_t i = 0; i < budget; ++i) {
    const std::size_t j = order[i];
    if (!(gain[j] < 0.0)) break;
    out.flip(j);
  }
  return out;
}

double linear_model_change(const PulseSequence& alpha_k, const GradientVector& g, const PulseSequence& alpha) {
  double s = 0.0;
  for (std::size_t j = 0; j < alpha_k.size(); ++j) {
    s += g[j] * (static_cast<double>(alpha[j]) - static_cast<double>(alpha_k[j]));
  }
  return s;
}

std::string_view to_string(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::ZeroGradient:
      return "ZeroGradient";
    case TerminalReason::NoImprovingFlip:
      return "NoImprovingFlip";
    case TerminalReason::RadiusExhausted:
      return "RadiusExhausted";
    case TerminalReason::MaxIterations:
      return "MaxIterations";
  }
  return "Unknown";
}

std::size_t OptimizationTrace::accepted_steps() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const IterationRecord& r) { return r.accepted; }));
}

TrustRegionState initial_state(const PulseSequence& alpha0, const Objective& objective, int radius) {
  ValueAndGradient vg = objective.value_and_gradient(alpha0);
  return TrustRegionState{alpha0, radius, vg.value, std::move(vg.gradient), 0};
}

StepResult tr_step(const TrustRegionState& state, const Objective& objective, double rho_hat) {
  if (state.radius < 1) throw DomainError("tr_step needs a radius of at least 1");
  if (!(rho_hat > 0.0 && rho_hat < 1.0)) throw DomainError("rho_hat must lie in (0, 1)");

  StepResult out{state, {}, std::nullopt};
  out.state.iteration = state.iteration + 1;
  IterationRecord& rec = out.record;
  rec.iteration = out.state.iteration;
  rec.value = state.value;
  rec.radius = state.radius;
  rec.rho = std::nan("");

  const bool zero_gradient =
      std::all_of(state.gradient.begin(), state.gradient.end(), [](double v) { return v == 0.0; });
  if (zero_gradient) {
    out.state.radius = 0;
    out.terminal = TerminalReason::ZeroGradient;
    return out;
  }

  PulseSequence candidate = solve_subproblem(state.alpha, state.gradient, state.radius);
  const double predicted = -linear_model_change(state.alpha, state.gradient, candidate);
  // A zero predicted reduction only happens when no gain is negative, the
  // same condition as an unchanged candidate.
  if (candidate == state.alpha || !(predicted > 0.0)) {
    out.state.radius = 0;
    out.terminal = TerminalReason::NoImprovingFlip;
    return out;
  }

  const std::size_t step = hamming_distance(candidate, state.alpha);
  const ObjectiveValue trial = objective.value(candidate);
  const double rho = (state.value.j - trial.j) / predicted;
  rec.rho = rho;
  rec.hamming_step = step;

  if (rho > 0.0) {
    ValueAndGradient vg = objective.value_and_gradient(candidate);
    out.state.alpha = std::move(candidate);
    // keep the value the ratio test saw so accepted J never increases
    out.state.value = trial;
    out.state.gradient = std::move(vg.gradient);
    if (rho > rho_hat && step == static_cast<std::size_t>(state.radius)) out.state.radius = 2 * state.radius;
    rec.accepted = true;
    rec.value = out.state.value;
  } else {
    out.state.radius = state.radius / 2;
  }
  return out;
}

OptimizationResult optimize(const PulseSequence& alpha0, const Objective& objective,
                            const TrustRegionOptions& options) {
  if (alpha0.size() == 0) throw DomainError("pulse sequence must have at least one entry");
  const int delta0 = options.delta0 > 0 ? options.delta0 : static_cast<int>(alpha0.size());

  TrustRegionState state = initial_state(alpha0, objective, delta0);
  OptimizationTrace trace;
  trace.initial = state.value;
  trace.initial_radius = delta0;
  trace.terminal_reason = TerminalReason::RadiusExhausted;

  while (state.radius >= 1) {
    if (state.iteration >= options.max_iter) {
      trace.terminal_reason = TerminalReason::MaxIterations;
      break;
    }
    StepResult step = tr_step(state, objective, options.rho_hat);
    trace.records.push_back(step.record);
    state = std::move(step.state);
    if (step.terminal) {
      trace.terminal_reason = *step.terminal;
      break;
    }
  }
  // accepted steps strictly decrease J, so the current iterate is the best seen
  return OptimizationResult{std::move(state.alpha), state.value, std::move(trace)};
}

}  // namespace sfqopt
