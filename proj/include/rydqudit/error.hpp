// Copyright 2026 The rydqudit Authors
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

namespace rydqudit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (index out of range, bad order,
/// non-unitary matrix, negative duration).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The ODE integrator could not meet its tolerance or its step size underflowed.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// A scenario config or serialized document failed validation. `field` holds the
/// JSON path of the offending entry when one is known.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Lookup of an unknown scenario or registry entry.
class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace rydqudit
