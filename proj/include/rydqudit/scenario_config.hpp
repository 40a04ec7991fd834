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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rydqudit/gates.hpp"
#include "rydqudit/pulse.hpp"
#include "rydqudit/scenarios.hpp"

namespace rydqudit {

struct InitialStateConfig {
  enum class Kind { uniform_packets, uniform_energy, packet, energy, amplitudes };
  Kind kind = Kind::uniform_packets;
  int label = 0;  ///< k for `packet`, j for `energy`
  Basis basis = Basis::packet;
  CVector values;  ///< for `amplitudes`, slot order, normalized on load
  double time = 0.0;
};

struct WaitEvent {
  double duration = 0.0;
};

/// Manifold pulse with an absolute centre time. Either the area on the core
/// packet or the peak Rabi frequency is given.
struct PulseEvent {
  PulseSpec pulse;
  std::optional<double> area;
};

struct StorageEvent {
  StoragePulse pulse;
};

/// Compiled gate; starts at the current clock, which must be a whole number
/// of Kepler periods.
struct GateEvent {
  CMatrix target;
  GateDefaults defaults;
  std::string source;  ///< how the target was specified
};

using ScenarioEvent = std::variant<WaitEvent, PulseEvent, StorageEvent, GateEvent>;

struct TraceGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

struct CheckSpec {
  std::string observable;
  double min = 0.0;
  double max = 0.0;
};

/// Parsed scenario document. Every physical quantity carries a unit tag;
/// the only defaulted physical parameter is the carrier detuning (0).
struct ScenarioConfig {
  std::string name = "config";
  std::string description;
  int nbar = 0;
  int d = 0;
  SpectrumMode spectrum = SpectrumMode::exact;
  PulseModel model = PulseModel::full;
  double rabi_exponent = -1.5;
  InitialStateConfig initial;
  std::vector<ScenarioEvent> events;
  std::optional<TraceGrid> grid;
  std::vector<double> snapshots;
  bool gate_fidelity = false;
  std::vector<CheckSpec> checks;
  std::uint64_t seed = 0;

  ManifoldSpec manifold() const { return {nbar, d}; }
};

/// Strict JSON parser. Errors are ConfigError with the JSON path of the
/// offending field. `base_dir` resolves relative unitary file paths.
ScenarioConfig parse_scenario_config(const std::string& text, const std::string& base_dir = ".");

/// Runs the events in order. Summary observables: final packet and energy
/// populations, storage populations, norm error, optional gate fidelities
/// and snapshot tables. Integration failures name the event index.
ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace rydqudit
