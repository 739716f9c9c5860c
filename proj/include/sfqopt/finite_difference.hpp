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

#include "sfqopt/adjoint.hpp"
#include "sfqopt/objective.hpp"
#include "sfqopt/qmodel.hpp"

namespace sfqopt {

struct GradientParts {
  GradientVector j;
  GradientVector j1;
  GradientVector j2;

  explicit GradientParts(std::size_t p = 0) : j(p), j1(p), j2(p) {}
  void set(std::size_t k, const ObjectiveValue& d) {
    j[k] = d.j;
    j1[k] = d.j1;
    j2[k] = d.j2;
  }
};

/// Central-difference gradient of the relaxed objective. Entry k replaces
/// factor k of the product by the one-step propagator at alpha_k +/- h,
/// with every other bit held fixed. Independent of the adjoint sweep: it
/// only uses the integrator and the objective.
class FiniteDifferenceGradient {
 public:
  FiniteDifferenceGradient(const SystemConfig& cfg, const GateTarget& target, double h);

  double step() const { return h_; }

  /// Gradients of J, J1 and J2, parallel over coordinates (OpenMP).
  GradientParts operator()(const PulseSequence& alpha) const;

  /// Serial reference; same arithmetic per coordinate.
  GradientParts serial(const PulseSequence& alpha) const;

  /// Central differences of (J, J1, J2) along coordinate k.
  ObjectiveValue coordinate(const PulseSequence& alpha, std::size_t k) const;

 private:
  const SystemConfig& cfg_;
  const GateTarget& target_;
  double h_;
  ComplexMatrix d_[2];      // unperturbed, alpha = 0, 1
  ComplexMatrix d_plus_[2];   // alpha + h
  ComplexMatrix d_minus_[2];  // alpha - h
};

struct GradientComparison {
  std::vector<double> relative_errors;
  double max_relative_error = 0.0;
  std::size_t coordinates_checked = 0;
};

/// Per-coordinate |a - f| / |f|. A coordinate whose absolute difference is
/// at most `abs_floor` counts as exact (relative error 0).
GradientComparison compare_gradients(const GradientVector& adjoint, const GradientVector& fd, double abs_floor);

}  // namespace sfqopt
