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

#include "sfqopt/objective.hpp"

#include <string>

#include "sfqopt/errors.hpp"

namespace sfqopt {

PulseSequence::PulseSequence(std::size_t p, bool value) : bits_(p, value ? 1 : 0) {}

PulseSequence::PulseSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("pulse sequence entries must be 0 or 1");
  }
}

PulseSequence PulseSequence::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw DomainError(std::string("unexpected character '") + c + "' in pulse sequence");
    }
  }
  return PulseSequence(std::move(bits));
}

std::size_t PulseSequence::count_ones() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::string PulseSequence::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) s[j] = '1';
  }
  return s;
}

std::size_t hamming_distance(const PulseSequence& a, const PulseSequence& b) {
  if (a.size() != b.size()) throw DomainError("hamming distance of sequences with different lengths");
  std::size_t d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] != b[j]);
  return d;
}

GateTarget GateTarget::embed(const ComplexMatrix& v_essential, int n_levels, double tolerance) {
  const Eigen::Index e = v_essential.rows();
  if (e < 1 || v_essential.cols() != e) throw NonUnitaryTarget("target gate must be square");
  if (e > n_levels) throw NonUnitaryTarget("target gate larger than the number of levels");
  const double defect = unitarity_defect(v_essential);
  if (!(defect <= tolerance)) {
    throw NonUnitaryTarget("target gate is not unitary (defect " + std::to_string(defect) + ")");
  }
  GateTarget t;
  t.v_essential = v_essential;
  t.embedded = ComplexMatrix::Zero(n_levels, n_levels);
  t.embedded.topLeftCorner(e, e) = v_essential;
  return t;
}

ForwardTrajectory propagate(const PulseSequence& alpha, const PropagatorSet& props, bool store_all) {
  const int n = props.dim();
  ForwardTrajectory traj;
  traj.complete = store_all;
  if (store_all) {
    traj.snapshots.reserve(alpha.size() + 1);
    traj.snapshots.push_back(ComplexMatrix::Identity(n, n));
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      ComplexMatrix next(n, n);
      next.noalias() = props.d(alpha[j]) * traj.snapshots.back();
      traj.snapshots.push_back(std::move(next));
    }
  } else {
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    ComplexMatrix next(n, n);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      next.noalias() = props.d(alpha[j]) * u;
      u.swap(next);
    }
    traj.snapshots.push_back(std::move(u));
  }
  return traj;
}

Eigen::VectorXd guard_weight_diagonal(const SystemConfig& cfg) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(cfg.n_levels);
  for (int g = 0; g < cfg.n_guard(); ++g) {
    w[cfg.n_essential + g] = cfg.guard_weights[g];
  }
  return w;
}

Complex gate_overlap(const ComplexMatrix& final, const GateTarget& target) {
  const int e = target.n_essential();
  return frobenius_inner(final.leftCols(e), target.embedded.leftCols(e));
}

double infidelity(const ComplexMatrix& final, const GateTarget& target) {
  const double e = target.n_essential();
  return 1.0 - std::norm(gate_overlap(final, target)) / (e * e);
}

namespace {

// <U P, W U P>_F for diagonal W.
double guard_population(const ComplexMatrix& u, const Eigen::VectorXd& w, int n_essential) {
  return (w.asDiagonal() * u.leftCols(n_essential).cwiseAbs2()).sum();
}

}  // namespace

double leakage(const ForwardTrajectory& traj, const Eigen::VectorXd& weights, int n_essential) {
  if (!traj.complete) throw MissingSnapshots("leakage needs every intermediate state");
  const std::size_t p = traj.steps();
  double sum = 0.5 * guard_population(traj.snapshots.front(), weights, n_essential) +
               0.5 * guard_population(traj.snapshots.back(), weights, n_essential);
  for (std::size_t j = 1; j < p; ++j) {
    sum += guard_population(traj.snapshots[j], weights, n_essential);
  }
  return sum / static_cast<double>(p);
}

ObjectiveValue total_objective(const PulseSequence& alpha, const PropagatorSet& props, const GateTarget& target,
                               const SystemConfig& cfg) {
  const ForwardTrajectory traj = propagate(alpha, props, true);
  ObjectiveValue v;
  v.j1 = infidelity(traj.final(), target);
  v.j2 = leakage(traj, guard_weight_diagonal(cfg), target.n_essential());
  v.j = v.j1 + cfg.c1 * v.j2;
  return v;
}

ObjectiveValue objective_of_product(const std::vector<const ComplexMatrix*>& factors, const GateTarget& target,
                                    const SystemConfig& cfg) {
  const int n = static_cast<int>(target.embedded.rows());
  ForwardTrajectory traj;
  traj.complete = true;
  traj.snapshots.reserve(factors.size() + 1);
  traj.snapshots.push_back(ComplexMatrix::Identity(n, n));
  for (const ComplexMatrix* f : factors) {
    traj.snapshots.push_back(*f * traj.snapshots.back());
  }
  ObjectiveValue v;
  v.j1 = infidelity(traj.final(), target);
  v.j2 = leakage(traj, guard_weight_diagonal(cfg), target.n_essential());
  v.j = v.j1 + cfg.c1 * v.j2;
  return v;
}

std::vector<std::vector<double>> essential_populations(const ForwardTrajectory& traj, int n_essential) {
  std::vector<std::vector<double>> rows;
  rows.reserve(traj.snapshots.size());
  for (const auto& u : traj.snapshots) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(n_essential * u.rows()));
    for (int a = 0; a < n_essential; ++a) {
      for (Eigen::Index b = 0; b < u.rows(); ++b) row.push_back(std::norm(u(b, a)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sfqopt
