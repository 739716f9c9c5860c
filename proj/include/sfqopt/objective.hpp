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
#include <string>
#include <string_view>
#include <vector>

#include "sfqopt/linalg.hpp"
#include "sfqopt/qmodel.hpp"
#include "sfqopt/system_config.hpp"

namespace sfqopt {

/// Binary on/off decision for each of the p SFQ time steps.
class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(std::size_t p, bool value = false);
  explicit PulseSequence(std::vector<std::uint8_t> bits);

  /// Parses the barcode text form: a string of '0'/'1' characters.
  static PulseSequence from_string(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t j) const { return bits_[j] != 0; }
  void set(std::size_t j, bool value) { bits_[j] = value ? 1 : 0; }
  void flip(std::size_t j) { bits_[j] ^= 1; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::size_t count_ones() const;
  std::string to_string() const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const PulseSequence& a, const PulseSequence& b);

/// Target gate on the essential subspace, embedded into N x N with zeros
/// outside the top-left E x E block.
struct GateTarget {
  ComplexMatrix v_essential;
  ComplexMatrix embedded;

  int n_essential() const { return static_cast<int>(v_essential.rows()); }

  /// Throws NonUnitaryTarget if ||V^H V - I||_F exceeds `tolerance`.
  static GateTarget embed(const ComplexMatrix& v_essential, int n_levels, double tolerance = 1e-12);
};

/// U_0 = I, U_j = D_{alpha_j} U_{j-1}. When built without `store_all` only
/// U_p is kept.
struct ForwardTrajectory {
  std::vector<ComplexMatrix> snapshots;
  bool complete = false;

  const ComplexMatrix& final() const { return snapshots.back(); }
  std::size_t steps() const { return complete ? snapshots.size() - 1 : 0; }
};

ForwardTrajectory propagate(const PulseSequence& alpha, const PropagatorSet& props, bool store_all);

/// Diagonal of W: zero on the essential levels, cfg.guard_weights on the
/// trailing G levels.
Eigen::VectorXd guard_weight_diagonal(const SystemConfig& cfg);

/// S_T = <U P, V P>_F over the first E columns.
Complex gate_overlap(const ComplexMatrix& final, const GateTarget& target);

/// J1 = 1 - |S_T|^2 / E^2.
double infidelity(const ComplexMatrix& final, const GateTarget& target);

/// Trapezoidal time average of <U_j P, W U_j P>_F over the step boundaries,
/// normalised by p. Needs every snapshot.
double leakage(const ForwardTrajectory& traj, const Eigen::VectorXd& weights, int n_essential);

struct ObjectiveValue {
  double j = 0.0;   ///< j1 + c1 * j2
  double j1 = 0.0;
  double j2 = 0.0;
};

ObjectiveValue total_objective(const PulseSequence& alpha, const PropagatorSet& props, const GateTarget& target,
                               const SystemConfig& cfg);

/// Same objective for an arbitrary product of one-step factors, applied in
/// order (factors[0] first). Used by finite-difference checks where a
/// single factor is swapped for a perturbed propagator.
ObjectiveValue objective_of_product(const std::vector<const ComplexMatrix*>& factors, const GateTarget& target,
                                    const SystemConfig& cfg);

/// |U_j(b, a)|^2 for each snapshot j, initial essential state a and level
/// b. Row j holds E * N values ordered a-major.
std::vector<std::vector<double>> essential_populations(const ForwardTrajectory& traj, int n_essential);

}  // namespace sfqopt
