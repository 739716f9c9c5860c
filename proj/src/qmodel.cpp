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

#include "sfqopt/qmodel.hpp"

#include <cmath>
#include <string>

#include "sfqopt/errors.hpp"

namespace sfqopt {
namespace {

// Fourth-order commutator-free Magnus scheme: two exponentials per step
// built from the generator sampled at the Gauss-Legendre nodes.
const double kGaussOffset = std::sqrt(3.0) / 6.0;
const double kWeightSmall = 0.25 - std::sqrt(3.0) / 6.0;
const double kWeightLarge = 0.25 + std::sqrt(3.0) / 6.0;

constexpr double kDivergenceTolerance = 1e-8;

Eigen::VectorXd drift_diagonal(const SystemConfig& cfg) {
  Eigen::VectorXd h(cfg.n_levels);
  for (int n = 0; n < cfg.n_levels; ++n) {
    h[n] = n * cfg.omega - 0.5 * cfg.xi * n * (n - 1);
  }
  return h;
}

Eigen::VectorXcd diagonal_exponential(const Eigen::VectorXd& h, double dt) {
  Eigen::VectorXcd e(h.size());
  for (Eigen::Index n = 0; n < h.size(); ++n) {
    e[n] = std::polar(1.0, -h[n] * dt);
  }
  return e;
}

// d/dalpha exp(M0 + alpha M1) at M = M0 + alpha M1, read off the upper
// right block of exp([[M, M1], [0, M]]).
ComplexMatrix exp_derivative(const ComplexMatrix& m, const ComplexMatrix& dm) {
  const Eigen::Index n = m.rows();
  ComplexMatrix block = ComplexMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = m;
  block.bottomRightCorner(n, n) = m;
  block.topRightCorner(n, n) = dm;
  return expm(block).topRightCorner(n, n);
}

}  // namespace

ComplexMatrix build_drift_hamiltonian(const SystemConfig& cfg) {
  return drift_diagonal(cfg).cast<Complex>().asDiagonal();
}

ComplexMatrix lowering_operator(int n_levels) {
  ComplexMatrix a = ComplexMatrix::Zero(n_levels, n_levels);
  for (int n = 1; n < n_levels; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix control_operator(int n_levels) {
  const ComplexMatrix a = lowering_operator(n_levels);
  return Complex(0.0, 1.0) * (a - a.adjoint());
}

double pulse_shape(double t, const SystemConfig& cfg) {
  if (t < 0.0 || t > cfg.delta) return 0.0;
  const double s = 3.0 * t / cfg.delta;
  double b;
  if (s < 1.0) {
    b = 0.5 * s * s;
  } else if (s < 2.0) {
    b = 0.5 * (-2.0 * s * s + 6.0 * s - 3.0);
  } else {
    b = 0.5 * (3.0 - s) * (3.0 - s);
  }
  return 3.0 * b / cfg.delta;
}

ComplexMatrix drift_propagator(const SystemConfig& cfg) {
  return diagonal_exponential(drift_diagonal(cfg), cfg.tau_p).asDiagonal();
}

StepSolution integrate_step(const SystemConfig& cfg, double alpha, bool with_sensitivity) {
  const int n = cfg.n_levels;
  const double dt = cfg.tau_p / cfg.substeps;
  const double beta = cfg.beta();
  const Eigen::VectorXd h0 = drift_diagonal(cfg);
  const Eigen::VectorXcd drift_step = diagonal_exponential(h0, dt);
  // -i H0 dt / 2, shared by both exponentials of a step
  const ComplexMatrix half_drift = (Complex(0.0, -0.5 * dt) * h0.cast<Complex>()).asDiagonal();
  // -i Q = a - a^H, real antisymmetric
  const ComplexMatrix coupling = Complex(0.0, -1.0) * control_operator(n);

  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  ComplexMatrix b;
  if (with_sensitivity) b = ComplexMatrix::Zero(n, n);

  ComplexMatrix e_left, e_right, de_left, de_right, tmp;
  for (int step = 0; step < cfg.substeps; ++step) {
    const double t0 = step * dt;
    const double v1 = pulse_shape(t0 + (0.5 - kGaussOffset) * dt, cfg);
    const double v2 = pulse_shape(t0 + (0.5 + kGaussOffset) * dt, cfg);
    if (v1 == 0.0 && v2 == 0.0) {
      // H = H0 on the whole step; dH/dalpha vanishes
      u = drift_step.asDiagonal() * u;
      if (with_sensitivity) b = drift_step.asDiagonal() * b;
      continue;
    }
    const ComplexMatrix dm_left = (beta * dt * (kWeightSmall * v1 + kWeightLarge * v2)) * coupling;
    const ComplexMatrix dm_right = (beta * dt * (kWeightLarge * v1 + kWeightSmall * v2)) * coupling;
    const ComplexMatrix m_left = half_drift + alpha * dm_left;
    const ComplexMatrix m_right = half_drift + alpha * dm_right;
    e_left = expm(m_left);
    e_right = expm(m_right);
    if (with_sensitivity) {
      de_left = exp_derivative(m_left, dm_left);
      de_right = exp_derivative(m_right, dm_right);
      // B <- F B + (dF/dalpha) U with F = E_left E_right
      tmp.noalias() = e_right * b + de_right * u;
      b.noalias() = e_left * tmp + de_left * (e_right * u);
    }
    tmp.noalias() = e_right * u;
    u.noalias() = e_left * tmp;
  }
  return {std::move(u), std::move(b)};
}

PropagatorSet precompute_propagators(const SystemConfig& cfg) {
  cfg.validate();
  StepSolution off = integrate_step(cfg, 0.0, true);
  StepSolution on = integrate_step(cfg, 1.0, true);
  const double defect = unitarity_defect(on.propagator);
  if (!(defect <= kDivergenceTolerance)) {
    throw IntegratorDivergence("pulse-on propagator lost unitarity (defect " + std::to_string(defect) +
                               "); increase substeps");
  }
  return PropagatorSet{drift_propagator(cfg), std::move(on.propagator), std::move(off.sensitivity),
                       std::move(on.sensitivity)};
}

ComplexMatrix relaxed_propagator(double alpha, const SystemConfig& cfg) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("relaxed control amplitude must lie in [0, 1], got " + std::to_string(alpha));
  }
  cfg.validate();
  return integrate_step(cfg, alpha, false).propagator;
}

}  // namespace sfqopt
