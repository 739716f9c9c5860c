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

#include "sfqopt/system_config.hpp"

#include <cmath>

#include "sfqopt/errors.hpp"

namespace sfqopt {

void SystemConfig::validate() const {
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be positive and finite");
  };
  positive("omega", omega);
  if (!std::isfinite(xi)) throw ValidationError("xi", "must be finite");
  positive("tau_p", tau_p);
  positive("delta", delta);
  if (delta > tau_p) throw ValidationError("delta", "pulse duration exceeds the SFQ time step");
  if (!std::isfinite(theta) || theta < 0.0) throw ValidationError("theta", "must be finite and non-negative");
  if (n_essential < 1) throw ValidationError("n_essential", "must be at least 1");
  if (n_levels < 2) throw ValidationError("n_levels", "must be at least 2");
  if (n_levels < n_essential) throw ValidationError("n_levels", "smaller than n_essential");
  if (static_cast<int>(guard_weights.size()) != n_guard()) {
    throw ValidationError("guard_weights", "expected " + std::to_string(n_guard()) + " entries, got " +
                                               std::to_string(guard_weights.size()));
  }
  for (double w : guard_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("guard_weights", "entries must be >= 0");
  }
  if (!(c1 >= 0.0) || !std::isfinite(c1)) throw ValidationError("c1", "must be >= 0");
  if (substeps < 1) throw ValidationError("substeps", "must be at least 1");
}

}  // namespace sfqopt
