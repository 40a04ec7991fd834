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
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rydqudit/basis.hpp"
#include "rydqudit/manifold.hpp"
#include "rydqudit/pulse.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

using Matrix2c = Eigen::Matrix2cd;

/// Two-level factor acting on rows/columns (k, k_prime) of a d x d unitary.
/// Indices are positions in slot order, so index i is packet label j_min + i.
struct TwoLevelOp {
  int k = 0;
  int k_prime = 1;
  Matrix2c u2 = Matrix2c::Identity();
};

/// [[cos(t/2), e^{i psi} sin(t/2)], [-e^{-i psi} sin(t/2), cos(t/2)]]
Matrix2c logical_rotation(double theta, double psi);
/// [[cos(t/2), i e^{i phi} sin(t/2)], [i e^{-i phi} sin(t/2), cos(t/2)]]:
/// the rotation a resonant pulse of area theta and phase phi performs on
/// (storage, core packet) and a g-e pulse performs on (g, e).
Matrix2c pulse_rotation(double theta, double phi);

struct GivensRotation {
  int col = 0;
  int row = 1;
  double theta = 0.0;
  double psi = 0.0;
};

/// G_m ... G_1 U = diag(exp(i phases)), G_i = logical_rotation on (col, row).
/// Columns are eliminated left to right, rows top to bottom.
struct GivensDecomposition {
  std::vector<GivensRotation> rotations;
  Eigen::VectorXd phases;
};

bool is_unitary(const CMatrix& u, double tol = 1e-10);

/// Throws InvalidArgument for non-square or non-unitary input (tol 1e-10).
GivensDecomposition givens_decompose(const CMatrix& u);

/// Factors in application order: diagonal phase pairs first, then the inverse
/// rotations. Identity factors are dropped, so the identity yields an empty
/// list. At most d(d-1)/2 + ceil(d/2) factors.
std::vector<TwoLevelOp> decompose_unitary(const CMatrix& u);

/// Product of the embedded factors, last one leftmost.
CMatrix reconstruct(const std::vector<TwoLevelOp>& ops, int d);

// ---- schedules -------------------------------------------------------------

struct Wait {
  double duration = 0.0;
};

/// Gaussian pulse between the manifold and a storage level, occupying its
/// +-4 sigma support. Its centre falls at the core time of packet label k.
/// Negative areas are realized as |area| with the phase advanced by pi.
struct ManifoldPulse {
  int k = 0;
  StorageLevel storage = StorageLevel::g;
  double area = units::kPi;
  double phase = 0.0;
  double tau_p = 0.0;
  double detuning = 0.0;

  double duration() const;
};

/// Square g-e pulse: rotation angle theta, phase phi, detuning, duration.
/// Closed form; the storage levels have no internal dynamics.
struct StoragePulse {
  double theta = 0.0;
  double phi = 0.0;
  double detuning = 0.0;
  double duration = 0.0;
};

using Primitive = std::variant<Wait, ManifoldPulse, StoragePulse>;

double duration_of(const Primitive& op);
std::string_view primitive_name(const Primitive& op);

/// Action of a StoragePulse on (b_g, b_e).
Matrix2c storage_pulse_matrix(const StoragePulse& pulse);

struct GateSchedule {
  int nbar = 0;
  int d = 0;
  std::vector<Primitive> ops;
  /// Ideal action is exp(i global_phase) times the target.
  double global_phase = 0.0;

  double total_duration() const;
  double total_kepler_periods() const;
  std::size_t pulse_count() const;
  ManifoldSpec manifold() const { return {nbar, d}; }
};

/// Timing-convention violations (pulse centres away from their packet's core
/// time). Empty when the schedule is consistent.
std::vector<std::string> schedule_violations(const GateSchedule& schedule);

enum class CompileStrategy { chain, fragments };
std::string_view to_string(CompileStrategy s);
CompileStrategy compile_strategy_from_string(std::string_view name);

struct GateDefaults {
  /// 0 selects T_K / (8 d).
  double tau_p = 0.0;
  double detuning = 0.0;
  double storage_pulse_duration = 0.0;
  CompileStrategy strategy = CompileStrategy::chain;
  /// Pad the end of the schedule to a multiple of T_rev.
  bool align_to_revival = false;
};

double effective_tau_p(const ManifoldSpec& spec, const GateDefaults& defaults);

/// Store-rotate-restore fragment for one two-level factor: pi pulse of the
/// first arriving packet into g, of the second into e, a g-e pulse, then the
/// two restoring pi pulses at the packets' next core times. Pads to a whole
/// number of Kepler periods. An identity u2 gives an empty schedule. Throws
/// InvalidArgument when validate_pulse rejects the pulse duration.
GateSchedule compile_two_level(const TwoLevelOp& op, const ManifoldSpec& spec,
                               const GateDefaults& defaults = {});

/// n when u equals SHIFT^n up to a global phase.
std::optional<int> shift_power(const CMatrix& u, double tol = 1e-10);

/// Full compile. SHIFT powers become a single Wait(n T_K/d) and the identity
/// an empty schedule. Otherwise `chain` stores each column leader in g once
/// and rotates it against the passing packets, while `fragments`
/// concatenates compile_two_level fragments of decompose_unitary.
GateSchedule compile_unitary(const CMatrix& u, const ManifoldSpec& spec,
                             const GateDefaults& defaults = {});

// ---- simulation --------------------------------------------------------------

enum class PulseModel { full, ideal };
std::string_view to_string(PulseModel m);
PulseModel pulse_model_from_string(std::string_view name);

struct SimulationOptions {
  PulseModel model = PulseModel::full;
  SpectrumMode mode = SpectrumMode::exact;
  double rabi_exponent = -1.5;
  OdeOptions ode;
};

/// Runs every primitive in order from the state's clock. `ideal` replaces each
/// manifold pulse by the instantaneous rotation on (storage, core packet) at
/// its centre. Integration errors are rethrown with the primitive index.
SimulationState simulate_schedule(const GateSchedule& schedule, const SimulationState& initial,
                                  const SimulationOptions& options = {});

/// Packet-basis map over the schedule: column k holds the final packet
/// amplitudes for initial packet k. Columns run concurrently when threads != 1
/// (0 = one per column); the result does not depend on it.
CMatrix packet_map(const GateSchedule& schedule, const SimulationOptions& options = {},
                   unsigned threads = 0);

/// d packet basis states followed by the d+1 chirp states
/// exp(i pi m k^2 / d)/sqrt(d), m = 0..d.
std::vector<CVector> fidelity_probes(int d);

/// Mean |<U p | M p>|^2 over fidelity_probes, summed in probe order.
double process_fidelity(const CMatrix& map, const CMatrix& target);
double process_fidelity(const GateSchedule& schedule, const CMatrix& target,
                        const SimulationOptions& options = {}, unsigned threads = 0);

CMatrix haar_unitary(int d, std::mt19937_64& rng);
/// SHIFT^n in slot order: (S b~)_k = b~_{k-n}.
CMatrix shift_matrix(int d, int n);

}  // namespace rydqudit
