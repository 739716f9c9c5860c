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

#include "sfqopt/finite_difference.hpp"

#include <algorithm>
#include <cmath>

#include "sfqopt/errors.hpp"

namespace sfqopt {

FiniteDifferenceGradient::FiniteDifferenceGradient(const SystemConfig& cfg, const GateTarget& target, double h)
    : cfg_(cfg), target_(target), h_(h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  cfg.validate();
  for (int bit = 0; bit < 2; ++bit) {
    d_[bit] = integrate_step(cfg, bit, false).propagator;
    d_plus_[bit] = integrate_step(cfg, bit + h, false).propagator;
    d_minus_[bit] = integrate_step(cfg, bit - h, false).propagator;
  }
}

ObjectiveValue FiniteDifferenceGradient::coordinate(const PulseSequence& alpha, std::size_t k) const {
  std::vector<const ComplexMatrix*> factors(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) factors[j] = &d_[alpha[j]];
  factors[k] = &d_plus_[alpha[k]];
  const ObjectiveValue up = objective_of_product(factors, target_, cfg_);
  factors[k] = &d_minus_[alpha[k]];
  const ObjectiveValue down = objective_of_product(factors, target_, cfg_);
  const double inv = 1.0 / (2.0 * h_);
  return ObjectiveValue{(up.j - down.j) * inv, (up.j1 - down.j1) * inv, (up.j2 - down.j2) * inv};
}

GradientParts FiniteDifferenceGradient::operator()(const PulseSequence& alpha) const {
  const auto p = static_cast<long>(alpha.size());
  GradientParts g(alpha.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < p; ++k) g.set(static_cast<std::size_t>(k), coordinate(alpha, static_cast<std::size_t>(k)));
  return g;
}

GradientParts FiniteDifferenceGradient::serial(const PulseSequence& alpha) const {
  GradientParts g(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) g.set(k, coordinate(alpha, k));
  return g;
}

GradientComparison compare_gradients(const GradientVector& adjoint, const GradientVector& fd, double abs_floor) {
  if (adjoint.size() != fd.size()) throw DomainError("gradient lengths differ");
  GradientComparison c;
  c.relative_errors.resize(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    const double diff = std::abs(adjoint[k] - fd[k]);
    double rel = 0.0;
    if (diff > abs_floor) rel = diff / std::abs(fd[k]);
    c.relative_errors[k] = rel;
    c.max_relative_error = std::max(c.max_relative_error, rel);
    ++c.coordinates_checked;
  }
  return c;
}

}  // namespace sfqopt
