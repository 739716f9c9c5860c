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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sfqopt/adjoint.hpp"
#include "sfqopt/objective.hpp"

namespace sfqopt {

/// What the trust-region loop needs from the problem. Implementations must
/// be safe to call concurrently from several threads.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual ObjectiveValue value(const PulseSequence& alpha) const = 0;
  virtual ValueAndGradient value_and_gradient(const PulseSequence& alpha) const = 0;
};

/// J1 + c1 J2 for one gate on precomputed propagators. Holds references;
/// the propagators, target and config must outlive it.
class GateObjective final : public Objective {
 public:
  GateObjective(const PropagatorSet& props, const GateTarget& target, const SystemConfig& cfg)
      : props_(props), target_(target), cfg_(cfg) {}

  ObjectiveValue value(const PulseSequence& alpha) const override;
  ValueAndGradient value_and_gradient(const PulseSequence& alpha) const override;

 private:
  const PropagatorSet& props_;
  const GateTarget& target_;
  const SystemConfig& cfg_;
};

/// Minimiser of g^T (alpha - alpha_k) over the Hamming ball of `radius`
/// around alpha_k. Flip gains are g_j for a 0 bit and -g_j for a 1 bit;
/// the most negative gains are flipped, at most `radius` of them, ties
/// broken by lower index. Zero gains are never flipped.
PulseSequence solve_subproblem(const PulseSequence& alpha_k, const GradientVector& g, int radius);

/// g^T (alpha - alpha_k).
double linear_model_change(const PulseSequence& alpha_k, const GradientVector& g, const PulseSequence& alpha);

enum class TerminalReason {
  ZeroGradient,
  NoImprovingFlip,
  RadiusExhausted,
  MaxIterations,
};

std::string_view to_string(TerminalReason reason);

struct TrustRegionState {
  PulseSequence alpha;
  int radius = 0;
  ObjectiveValue value;
  GradientVector gradient;
  int iteration = 0;
};

/// One loop body of the trust-region method. J values are those of the
/// iterate after the step.
struct IterationRecord {
  int iteration = 0;
  ObjectiveValue value;
  int radius = 0;  ///< radius used by this step
  double rho = 0.0;
  bool accepted = false;
  std::size_t hamming_step = 0;
};

struct OptimizationTrace {
  ObjectiveValue initial;
  int initial_radius = 0;
  std::vector<IterationRecord> records;
  TerminalReason terminal_reason = TerminalReason::RadiusExhausted;

  std::size_t accepted_steps() const;
};

struct StepResult {
  TrustRegionState state;
  IterationRecord record;
  std::optional<TerminalReason> terminal;
};

/// Starts the loop: evaluates J and its gradient at alpha0.
TrustRegionState initial_state(const PulseSequence& alpha0, const Objective& objective, int radius);

/// Runs one iteration. Requires state.radius >= 1 and 0 < rho_hat < 1.
///  - zero gradient or no improving flip: terminal, radius set to 0
///  - rho > rho_hat: accept, radius doubled if the step used the full radius
///  - 0 < rho <= rho_hat: accept, radius kept
///  - rho <= 0: reject, gradient kept, radius halved (floor)
StepResult tr_step(const TrustRegionState& state, const Objective& objective, double rho_hat);

struct TrustRegionOptions {
  int delta0 = 0;  ///< initial radius; 0 selects p
  double rho_hat = 0.75;
  int max_iter = 500;
};

struct OptimizationResult {
  PulseSequence alpha;
  ObjectiveValue value;
  OptimizationTrace trace;
};

OptimizationResult optimize(const PulseSequence& alpha0, const Objective& objective,
                            const TrustRegionOptions& options = {});

}  // namespace sfqopt
