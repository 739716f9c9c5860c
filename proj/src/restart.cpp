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

#include "sfqopt/restart.hpp"

#include <random>

#include "sfqopt/errors.hpp"

namespace sfqopt {
namespace {

RestartSummary summarize(int index, const OptimizationResult& r) {
  return RestartSummary{index, r.value, static_cast<int>(r.trace.records.size()), r.trace.accepted_steps(),
                        r.trace.terminal_reason};
}

MultiRestartResult select_best(std::vector<OptimizationResult>& results) {
  MultiRestartResult out;
  out.summaries.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    out.summaries.push_back(summarize(static_cast<int>(i), results[i]));
    if (results[i].value.j < results[out.best_index].value.j) out.best_index = static_cast<int>(i);
  }
  out.best = std::move(results[out.best_index]);
  return out;
}

void check_args(int n_restarts, std::size_t p) {
  if (n_restarts < 1) throw DomainError("n_restarts must be at least 1");
  if (p < 1) throw DomainError("p must be at least 1");
}

}  // namespace

std::vector<PulseSequence> random_initial_guesses(int n_restarts, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PulseSequence> guesses;
  guesses.reserve(static_cast<std::size_t>(n_restarts));
  for (int r = 0; r < n_restarts; ++r) {
    PulseSequence alpha(p);
    for (std::size_t j = 0; j < p; ++j) alpha.set(j, (rng() >> 63) != 0);
    guesses.push_back(std::move(alpha));
  }
  return guesses;
}

MultiRestartResult multi_restart(const Objective& objective, std::size_t p, int n_restarts, std::uint64_t seed,
                                 const TrustRegionOptions& options) {
  check_args(n_restarts, p);
  const std::vector<PulseSequence> guesses = random_initial_guesses(n_restarts, p, seed);
  std::vector<OptimizationResult> results(guesses.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < n_restarts; ++r) {
    results[r] = optimize(guesses[r], objective, options);
  }
  return select_best(results);
}

namespace serial {

MultiRestartResult multi_restart(const Objective& objective, std::size_t p, int n_restarts, std::uint64_t seed,
                                 const TrustRegionOptions& options) {
  check_args(n_restarts, p);
  const std::vector<PulseSequence> guesses = random_initial_guesses(n_restarts, p, seed);
  std::vector<OptimizationResult> results;
  results.reserve(guesses.size());
  for (const auto& guess : guesses) results.push_back(optimize(guess, objective, options));
  return select_best(results);
}

}  // namespace serial
}  // namespace sfqopt
