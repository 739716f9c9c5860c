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

#include "sfqopt/linalg.hpp"
#include "sfqopt/system_config.hpp"

namespace sfqopt {

/// H0/hbar in rad/ns: diag(n*omega - (xi/2) n(n-1)), n = 0..N-1.
ComplexMatrix build_drift_hamiltonian(const SystemConfig& cfg);

/// Truncated lowering operator, a[n-1, n] = sqrt(n).
ComplexMatrix lowering_operator(int n_levels);

/// The Hermitian coupling i(a - a^H) that multiplies beta * v(t).
ComplexMatrix control_operator(int n_levels);

/// Unit-area quadratic B-spline bump supported on [0, delta].
///
/// Uniform knots 0, delta/3, 2delta/3, delta. With s = 3t/delta the
/// cardinal quadratic B-spline is
///
///   B(s) = s^2/2               on [0, 1)
///          (-2s^2 + 6s - 3)/2  on [1, 2)
///          (3 - s)^2/2         on [2, 3]
///
/// and integrates to 1 in s, so the normalisation gamma = delta/3 gives
/// v(t) = 3 B(3t/delta) / delta with unit integral in t. Zero outside
/// [0, delta].
double pulse_shape(double t, const SystemConfig& cfg);

/// One-step propagators for the pulse-off and pulse-on cases together with
/// their derivatives with respect to a relaxed control amplitude.
/// Immutable once built; safe to share between threads.
struct PropagatorSet {
  ComplexMatrix d0;  ///< pulse off, closed-form drift exponential
  ComplexMatrix d1;  ///< pulse on
  ComplexMatrix b0;  ///< dD/dalpha at alpha = 0
  ComplexMatrix b1;  ///< dD/dalpha at alpha = 1

  int dim() const { return static_cast<int>(d0.rows()); }
  const ComplexMatrix& d(bool bit) const { return bit ? d1 : d0; }
  const ComplexMatrix& b(bool bit) const { return bit ? b1 : b0; }
};

/// Solution of one SFQ step at a given control amplitude.
struct StepSolution {
  ComplexMatrix propagator;
  ComplexMatrix sensitivity;  ///< empty unless requested
};

/// Integrates dU/dt = -i[H0 + alpha beta v(t) Q] U over [0, tau_p] with
/// cfg.substeps steps of a fourth-order commutator-free Magnus scheme.
/// Each step is a product of two matrix exponentials, so the result is
/// unitary to round-off for any step count.
///
/// When `with_sensitivity` is set, the augmented system
///   dB/dt = -i H B - i (dH/dalpha) U,  B(0) = 0
/// is advanced by the same scheme (block-triangular exponentials), which
/// makes B the exact derivative of the discrete propagator.
///
/// `alpha` may be any real number; this is the unchecked kernel behind
/// relaxed_propagator and is also used for finite-difference oracles that
/// need to step slightly outside [0, 1].
StepSolution integrate_step(const SystemConfig& cfg, double alpha, bool with_sensitivity);

/// exp(-i H0 tau_p), computed from the diagonal directly.
ComplexMatrix drift_propagator(const SystemConfig& cfg);

/// Builds d0, d1, b0, b1 once for a configuration. Throws
/// IntegratorDivergence if d1 drifts from unitarity by more than 1e-8.
PropagatorSet precompute_propagators(const SystemConfig& cfg);

/// One-step propagator at control amplitude alpha in [0, 1]. Throws
/// DomainError outside that range. relaxed_propagator(1) is bit-identical
/// to precompute_propagators(cfg).d1.
ComplexMatrix relaxed_propagator(double alpha, const SystemConfig& cfg);

}  // namespace sfqopt
