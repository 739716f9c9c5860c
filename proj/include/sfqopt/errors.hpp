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

#include <stdexcept>
#include <string>
#include <utility>

namespace sfqopt {

/// Base class for every error raised by the library.
class SfqError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed line in a config file. Carries the 1-based line number.
class ParseError : public SfqError {
 public:
  ParseError(int line, const std::string& what)
      : SfqError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A configuration value breaks an invariant. Carries the offending key.
class ValidationError : public SfqError {
 public:
  ValidationError(std::string key, const std::string& what)
      : SfqError(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Time integration lost unitarity; usually means too few substeps.
class IntegratorDivergence : public SfqError {
 public:
  using SfqError::SfqError;
};

/// Argument outside the domain of an operation.
class DomainError : public SfqError {
 public:
  using SfqError::SfqError;
};

/// Gradient requested from a trajectory that only kept the final state.
class MissingSnapshots : public SfqError {
 public:
  using SfqError::SfqError;
};

class NonUnitaryTarget : public SfqError {
 public:
  using SfqError::SfqError;
};

}  // namespace sfqopt
