// Copyright 2026 The cavnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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
#include <vector>

namespace cavnet {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad port, non-unitary matrix, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: a resonant fiber mode overlaps the cavity couplings,
/// a propagator received non-finite entries, and the like.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// One problem found while reading or validating a network description.
/// `where` is a JSON-pointer style path ("/components/0/inputs"); `line` and
/// `column` are 1-based and only set for syntax errors.
struct Diagnostic {
  std::string message;
  std::string where;
  int line = 0;
  int column = 0;

  std::string str() const;
};

/// Raised when a network description cannot be turned into a valid spec.
class SpecError : public Error {
 public:
  explicit SpecError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace cavnet
