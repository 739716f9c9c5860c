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

#include <filesystem>
#include <string>
#include <vector>

#include "sfqopt/errors.hpp"
#include "sfqopt/linalg.hpp"
#include "sfqopt/objective.hpp"
#include "sfqopt/restart.hpp"
#include "sfqopt/trust_region.hpp"

namespace sfqopt {

/// Failure to read or write a file.
class IoError : public SfqError {
 public:
  using SfqError::SfqError;
};

/// One line of p '0'/'1' characters.
void write_barcode(const std::filesystem::path& path, const PulseSequence& alpha);
PulseSequence read_barcode(const std::filesystem::path& path);

/// time_ns, then pop_{a}_{b} for every initial essential state a and level
/// b, one row per SFQ step boundary.
void write_populations_csv(const std::filesystem::path& path, const ForwardTrajectory& traj, double tau_p,
                           int n_essential);

/// iter, J, J1, J2, Delta, rho, accepted, hamming. Row 0 is the initial
/// guess.
void write_convergence_csv(const std::filesystem::path& path, const OptimizationTrace& trace);

void write_restarts_csv(const std::filesystem::path& path, const std::vector<RestartSummary>& summaries);

/// E rows of E whitespace-separated entries, each "re" or "re,im". Blank
/// lines and '#' comments are skipped.
ComplexMatrix read_gate_file(const std::filesystem::path& path);

/// Same text form as read_gate_file accepts.
std::string format_matrix(const ComplexMatrix& m);

/// Fixed-format number used in every CSV so outputs are byte-reproducible.
std::string format_number(double v);

}  // namespace sfqopt
