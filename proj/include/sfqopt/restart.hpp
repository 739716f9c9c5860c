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
#include <vector>

#include "sfqopt/trust_region.hpp"

namespace sfqopt {

/// Uniform i.i.d. bits from a seeded mt19937_64; one bit per draw (the
/// top bit of each 64-bit output), so the stream is portable.
std::vector<PulseSequence> random_initial_guesses(int n_restarts, std::size_t p, std::uint64_t seed);

struct RestartSummary {
  int index = 0;
  ObjectiveValue value;
  int iterations = 0;
  std::size_t accepted_steps = 0;
  TerminalReason terminal_reason = TerminalReason::RadiusExhausted;
};

struct MultiRestartResult {
  int best_index = 0;
  OptimizationResult best;
  std::vector<RestartSummary> summaries;
};

/// Optimises n_restarts random initial guesses concurrently and keeps the
/// one with the smallest J (lowest restart index on ties). The guesses are
/// drawn up front, so the result does not depend on the thread count.
MultiRestartResult multi_restart(const Objective& objective, std::size_t p, int n_restarts, std::uint64_t seed,
                                 const TrustRegionOptions& options = {});

namespace serial {

/// Reference implementation of sfqopt::multi_restart, one restart at a time.
MultiRestartResult multi_restart(const Objective& objective, std::size_t p, int n_restarts, std::uint64_t seed,
                                 const TrustRegionOptions& options = {});

}  // namespace serial
}  // namespace sfqopt
