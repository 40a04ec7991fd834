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

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "rydqudit/error.hpp"
#include "rydqudit/manifold.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

namespace {

struct Quantity {
  double value;
  std::string unit;
};

Quantity split_quantity(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  const char* begin = text.data() + i;
  const char* end = text.data() + text.size();
  double value = 0.0;
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || !std::isfinite(value)) {
    throw ConfigError("", "expected a number followed by a unit, got '" + std::string(text) + "'");
  }
  std::string unit;
  for (const char* p = res.ptr; p != end; ++p) {
    if (!std::isspace(static_cast<unsigned char>(*p))) unit += *p;
  }
  if (unit.empty()) {
    throw ConfigError("", "quantity '" + std::string(text) + "' has no unit tag");
  }
  return {value, unit};
}

}  // namespace

double parse_time(std::string_view text, const ManifoldSpec* manifold) {
  const Quantity q = split_quantity(text);
  if (q.unit == "au") return q.value;
  if (q.unit == "s") return units::seconds_to_au(q.value);
  if (q.unit == "ms") return units::seconds_to_au(q.value * 1e-3);
  if (q.unit == "us") return units::seconds_to_au(q.value * 1e-6);
  if (q.unit == "ns") return units::seconds_to_au(q.value * 1e-9);
  if (q.unit == "ps") return units::seconds_to_au(q.value * 1e-12);
  if (q.unit == "fs") return units::seconds_to_au(q.value * 1e-15);
  if (q.unit == "kepler" || q.unit == "slot" || q.unit == "revival") {
    if (manifold == nullptr) {
      throw ConfigError("", "unit '" + q.unit + "' needs a manifold");
    }
    const TimeScales ts = time_scales(*manifold);
    if (q.unit == "kepler") return q.value * ts.t_kepler;
    if (q.unit == "revival") return q.value * ts.t_revival;
    return q.value * ts.t_kepler / manifold->d();
  }
  throw ConfigError("", "unknown time unit '" + q.unit + "'");
}

double parse_angular_frequency(std::string_view text) {
  const Quantity q = split_quantity(text);
  if (q.unit == "au") return q.value;
  if (q.unit == "GHz") {
    const double hz = q.value * 1e9;
    return 2.0 * units::kPi * hz * units::kAuTimeSeconds;
  }
  throw ConfigError("", "unknown frequency unit '" + q.unit + "'");
}

}  // namespace rydqudit
