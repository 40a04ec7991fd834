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

#include <string>
#include <string_view>

namespace rydqudit {

// Everything inside the library runs in atomic units (hbar = 1, hartree,
// a.u. of time). SI only appears at I/O boundaries.
namespace units {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

/// One atomic unit of time in seconds.
inline constexpr double kAuTimeSeconds = 2.418884e-17;

constexpr double au_to_seconds(double t_au) { return t_au * kAuTimeSeconds; }
constexpr double au_to_ns(double t_au) { return t_au * kAuTimeSeconds * 1e9; }
constexpr double seconds_to_au(double t_s) { return t_s / kAuTimeSeconds; }

}  // namespace units

class ManifoldSpec;

/// Parses a unit-tagged time such as "0.89 ns", "1 kepler", "2 slot" or "150 au"
/// into atomic units. "kepler" and "slot" (= T_K/d) need the manifold; pass
/// nullptr when those units are not allowed. A bare number is rejected.
double parse_time(std::string_view text, const ManifoldSpec* manifold);

/// Parses a unit-tagged angular frequency: "0.001 au" or "2.5 GHz" (ordinary
/// frequency, converted with 2*pi).
double parse_angular_frequency(std::string_view text);

}  // namespace rydqudit
