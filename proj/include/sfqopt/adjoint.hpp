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

#include <vector>

#include "sfqopt/objective.hpp"

namespace sfqopt {

/// dJ/dalpha_k in the relaxed sense, evaluated at the binary iterate.
using GradientVector = std::vector<double>;

struct ValueAndGradient {
  ObjectiveValue value;
  GradientVector gradient;
};

// All routines below take A_k = D_{alpha_k} and B_k = b_{alpha_k}, so the
// relaxed derivative of a step is taken at whichever bound the bit sits on.

/// Gradient of J1 from one backward sweep of Lambda_k = A_{k+1}^H Lambda_{k+1},
/// Lambda_p = V. Throws MissingSnapshots for a final-only trajectory.
GradientVector grad_infidelity(const ForwardTrajectory& traj, const PulseSequence& alpha,
                               const PropagatorSet& props, const GateTarget& target);

/// Gradient of J2 from the backward sweep
///   L_p = W U_p P / 2,  L_k = W U_k P + A_{k+1}^H L_{k+1}.
GradientVector grad_leakage(const ForwardTrajectory& traj, const PulseSequence& alpha, const PropagatorSet& props,
                            const Eigen::VectorXd& weights, int n_essential);

/// Forward pass plus one fused backward sweep carrying both adjoints.
ValueAndGradient value_and_gradient(const PulseSequence& alpha, const PropagatorSet& props,
                                    const GateTarget& target, const SystemConfig& cfg);

GradientVector grad_total(const PulseSequence& alpha, const PropagatorSet& props, const GateTarget& target,
                          const SystemConfig& cfg);

/// grad_infidelity + c1 * grad_leakage with two independent sweeps.
GradientVector grad_total_separate(const PulseSequence& alpha, const PropagatorSet& props,
                                   const GateTarget& target, const SystemConfig& cfg);

/// Lambda_1 .. Lambda_p (index k-1 holds Lambda_k), full N x N.
std::vector<ComplexMatrix> infidelity_adjoints(const PulseSequence& alpha, const PropagatorSet& props,
                                               const GateTarget& target);

}  // namespace sfqopt
