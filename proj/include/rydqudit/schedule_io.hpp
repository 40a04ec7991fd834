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

#include <optional>
#include <string>

#include "rydqudit/gates.hpp"

namespace rydqudit {

/// JSON document, one object per primitive. Times carry both the atomic-unit
/// value (authoritative) and an SI copy for readers. Doubles are written with
/// round-trip precision, so parse(serialize(s)) == s exactly.
std::string schedule_to_json(const GateSchedule& schedule, int indent = 2);

/// Strict parser; unknown keys and malformed entries raise ConfigError naming
/// the offending field.
GateSchedule schedule_from_json(const std::string& text);

struct UnitaryFile {
  CMatrix u;
  std::optional<int> nbar;
};

/// {"dimension": d, "entries": [[[re, im], ...], ...], "nbar": optional}
/// Rows are packet indices in slot order.
UnitaryFile unitary_from_json(const std::string& text);
std::string unitary_to_json(const CMatrix& u, std::optional<int> nbar = std::nullopt);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace rydqudit
