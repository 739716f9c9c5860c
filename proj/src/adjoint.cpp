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

#include "sfqopt/adjoint.hpp"

#include "sfqopt/errors.hpp"

namespace sfqopt {
namespace {

void require_snapshots(const ForwardTrajectory& traj, const PulseSequence& alpha) {
  if (!traj.complete || traj.steps() != alpha.size()) {
    throw MissingSnapshots("gradient needs all p + 1 forward snapshots");
  }
}

}  // namespace

GradientVector grad_infidelity(const ForwardTrajectory& traj, const PulseSequence& alpha,
                               const PropagatorSet& props, const GateTarget& target) {
  require_snapshots(traj, alpha);
  const std::size_t p = alpha.size();
  const int e = target.n_essential();
  const double scale = -2.0 / (e * e);
  const Complex s_bar = std::conj(gate_overlap(traj.final(), target));

  GradientVector g(p);
  ComplexMatrix lambda = target.embedded;
  ComplexMatrix next;
  for (std::size_t k = p; k >= 1; --k) {
    const bool bit = alpha[k - 1];
    const ComplexMatrix bu = props.b(bit) * traj.snapshots[k - 1].leftCols(e);
    g[k - 1] = scale * std::real(s_bar * frobenius_inner(bu, lambda.leftCols(e)));
    next.noalias() = props.d(bit).adjoint() * lambda;
    lambda.swap(next);
  }
  return g;
}

GradientVector grad_leakage(const ForwardTrajectory& traj, const PulseSequence& alpha, const PropagatorSet& props,
                            const Eigen::VectorXd& weights, int n_essential) {
  require_snapshots(traj, alpha);
  const std::size_t p = alpha.size();
  const int e = n_essential;
  const double scale = 2.0 / static_cast<double>(p);

  GradientVector g(p);
  ComplexMatrix lt = 0.5 * (weights.asDiagonal() * traj.snapshots[p].leftCols(e));
  ComplexMatrix next;
  for (std::size_t k = p; k >= 1; --k) {
    const bool bit = alpha[k - 1];
    if (k < p) {
      next.noalias() = props.d(alpha[k]).adjoint() * lt;
      lt = weights.asDiagonal() * traj.snapshots[k].leftCols(e) + next;
    }
    const ComplexMatrix bu = props.b(bit) * traj.snapshots[k - 1].leftCols(e);
    g[k - 1] = scale * std::real(frobenius_inner(bu, lt));
  }
  return g;
}

ValueAndGradient value_and_gradient(const PulseSequence& alpha, const PropagatorSet& props,
                                    const GateTarget& target, const SystemConfig& cfg) {
  const ForwardTrajectory traj = propagate(alpha, props, true);
  const Eigen::VectorXd w = guard_weight_diagonal(cfg);
  const std::size_t p = alpha.size();
  const int e = target.n_essential();

  ValueAndGradient out;
  const Complex s = gate_overlap(traj.final(), target);
  out.value.j1 = 1.0 - std::norm(s) / (e * e);
  out.value.j2 = leakage(traj, w, e);
  out.value.j = out.value.j1 + cfg.c1 * out.value.j2;

  const double scale1 = -2.0 / (e * e);
  const double scale2 = 2.0 * cfg.c1 / static_cast<double>(p);
  const Complex s_bar = std::conj(s);

  out.gradient.resize(p);
  ComplexMatrix lambda = target.embedded;
  ComplexMatrix lt = 0.5 * (w.asDiagonal() * traj.snapshots[p].leftCols(e));
  ComplexMatrix next_lambda, next_lt;
  for (std::size_t k = p; k >= 1; --k) {
    const bool bit = alpha[k - 1];
    const ComplexMatrix bu = props.b(bit) * traj.snapshots[k - 1].leftCols(e);
    const double d1 = scale1 * std::real(s_bar * frobenius_inner(bu, lambda.leftCols(e)));
    const double d2 = scale2 * std::real(frobenius_inner(bu, lt));
    out.gradient[k - 1] = d1 + d2;
    if (k > 1) {
      const auto a_h = props.d(bit).adjoint();
      next_lambda.noalias() = a_h * lambda;
      lambda.swap(next_lambda);
      next_lt.noalias() = a_h * lt;
      lt = w.asDiagonal() * traj.snapshots[k - 1].leftCols(e) + next_lt;
    }
  }
  return out;
}

GradientVector grad_total(const PulseSequence& alpha, const PropagatorSet& props, const GateTarget& target,
                          const SystemConfig& cfg) {
  return value_and_gradient(alpha, props, target, cfg).gradient;
}

GradientVector grad_total_separate(const PulseSequence& alpha, const PropagatorSet& props,
                                   const GateTarget& target, const SystemConfig& cfg) {
  const ForwardTrajectory traj = propagate(alpha, props, true);
  GradientVector g = grad_infidelity(traj, alpha, props, target);
  const GradientVector g2 = grad_leakage(traj, alpha, props, guard_weight_diagonal(cfg), target.n_essential());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] += cfg.c1 * g2[k];
  return g;
}

std::vector<ComplexMatrix> infidelity_adjoints(const PulseSequence& alpha, const PropagatorSet& props,
                                               const GateTarget& target) {
  const std::size_t p = alpha.size();
  std::vector<ComplexMatrix> lambdas(p);
  if (p == 0) return lambdas;
  lambdas[p - 1] = target.embedded;
  for (std::size_t k = p - 1; k >= 1; --k) {
    lambdas[k - 1] = props.d(alpha[k]).adjoint() * lambdas[k];
  }
  return lambdas;
}

}  // namespace sfqopt
