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

#include <numbers>
#include <vector>

namespace sfqopt {

/// Physical and numerical parameters of a single transmon driven by SFQ
/// pulses. Frequencies are angular (rad/ns), times are in ns.
struct SystemConfig {
  double omega = 2.0 * std::numbers::pi * 5.0;  ///< fundamental frequency
  double xi = 2.0 * std::numbers::pi * 0.25;    ///< anharmonicity (self-Kerr)
  double tau_p = 0.025;                         ///< SFQ time step
  double delta = 0.004;                         ///< pulse duration, support of the bump
  double theta = std::numbers::pi / 300.0;      ///< tip angle per pulse
  int n_levels = 4;
  int n_essential = 2;
  std::vector<double> guard_weights{0.1, 1.0};  ///< one entry per guard level
  double c1 = 1e-2;                             ///< leakage weight
  int substeps = 10000;                         ///< integrator steps per tau_p

  int n_guard() const { return n_levels - n_essential; }

  /// Pulse area in rad. The control term is beta * v(t) * i(a - a^H) with
  /// v of unit integral (1/ns), so one isolated pulse applies
  /// exp(beta (a - a^H)) and turns the ground state by the polar angle
  /// 2 beta = theta on the Bloch sphere.
  double beta() const { return 0.5 * theta; }

  /// Throws ValidationError naming the first offending field.
  void validate() const;
};

}  // namespace sfqopt
