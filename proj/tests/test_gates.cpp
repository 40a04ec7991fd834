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


#include <doctest.h>

#include <random>

#include "rydqudit/error.hpp"
#include "rydqudit/gates.hpp"

using namespace rydqudit;
using units::kPi;

namespace {

CMatrix swap_matrix(int d, int a, int b) {
  CMatrix x = CMatrix::Identity(d, d);
  x(a, a) = x(b, b) = 0.0;
  x(a, b) = x(b, a) = 1.0;
  return x;
}

SimulationOptions ideal_linear() {
  SimulationOptions o;
  o.model = PulseModel::ideal;
  o.mode = SpectrumMode::taylor1;
  return o;
}

}  // namespace

TEST_CASE("rotation conventions") {
  CHECK(is_unitary(logical_rotation(0.7, 1.1)));
  CHECK(is_unitary(pulse_rotation(0.7, 1.1)));
  const Matrix2c r = pulse_rotation(kPi, 0.0);
  CHECK(std::abs(r(0, 1) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(r(0, 0)) < 1e-15);
  CHECK(logical_rotation(0.0, 2.0).isApprox(Matrix2c::Identity()));
  CHECK_FALSE(is_unitary(CMatrix::Ones(2, 2)));
}

TEST_CASE("Haar unitaries decompose and reconstruct") {
  std::mt19937_64 rng(41);
  for (int d : {2, 3, 4, 5, 8}) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix u = haar_unitary(d, rng);
      REQUIRE(is_unitary(u, 1e-12));
      const auto ops = decompose_unitary(u);
      CHECK(int(ops.size()) <= d * (d - 1) / 2 + d);
      CHECK((reconstruct(ops, d) - u).cwiseAbs().maxCoeff() < 1e-12);
      const GivensDecomposition g = givens_decompose(u);
      CHECK(int(g.rotations.size()) <= d * (d - 1) / 2);
      CHECK(g.phases.size() == d);
    }
  }
  CHECK_THROWS_AS(decompose_unitary(CMatrix::Ones(3, 3)), InvalidArgument);
  CHECK(decompose_unitary(CMatrix::Identity(4, 4)).empty());
}

TEST_CASE("Haar sampling is seeded") {
  std::mt19937_64 a(7), b(7);
  CHECK(haar_unitary(4, a).isApprox(haar_unitary(4, b), 0.0));
}

TEST_CASE("shift powers compile to a single wait") {
  const ManifoldSpec spec(180, 8);
  for (int n = 1; n < 8; ++n) {
    const CMatrix s = shift_matrix(8, n);
    CHECK(shift_power(s) == n);
    const GateSchedule g = compile_unitary(s, spec);
    REQUIRE(g.ops.size() == 1);
    CHECK(std::holds_alternative<Wait>(g.ops[0]));
    CHECK(g.total_duration() == doctest::Approx(n * time_scales(spec).t_kepler / 8));
    CHECK(g.pulse_count() == 0);
    CHECK(process_fidelity(g, s, ideal_linear()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_FALSE(shift_power(swap_matrix(8, 0, 1)).has_value());
}

TEST_CASE("identity compiles to an empty schedule") {
  const ManifoldSpec spec(180, 4);
  const GateSchedule g = compile_unitary(CMatrix::Identity(4, 4), spec);
  CHECK(g.ops.empty());
  CHECK(g.total_duration() == 0.0);
  CHECK(process_fidelity(g, CMatrix::Identity(4, 4)) == doctest::Approx(1.0));
}

TEST_CASE("ideal pulses with a linear spectrum reproduce the target exactly") {
  std::mt19937_64 rng(42);
  for (auto strategy : {CompileStrategy::chain, CompileStrategy::fragments}) {
    for (int d : {2, 3, 4}) {
      const ManifoldSpec spec(180, d);
      const CMatrix u = haar_unitary(d, rng);
      GateDefaults def;
      def.strategy = strategy;
      const GateSchedule g = compile_unitary(u, spec, def);
      CHECK(schedule_violations(g).empty());
      CHECK(process_fidelity(g, u, ideal_linear()) == doctest::Approx(1.0).epsilon(1e-10));
      // Unitarity of the simulated map, up to the global phase convention.
      CHECK(is_unitary(packet_map(g, ideal_linear(), 1), 1e-10));
    }
  }
}

TEST_CASE("schedule durations are whole Kepler periods") {
  std::mt19937_64 rng(43);
  const ManifoldSpec spec(180, 4);
  const GateSchedule g = compile_unitary(haar_unitary(4, rng), spec);
  const double periods = g.total_kepler_periods();
  CHECK(std::abs(periods - std::round(periods)) < 1e-9);
  GateDefaults aligned;
  aligned.align_to_revival = true;
  const GateSchedule r = compile_unitary(haar_unitary(4, rng), spec, aligned);
  const double revivals = r.total_duration() / time_scales(spec).t_revival;
  CHECK(std::abs(revivals - std::round(revivals)) < 1e-9);
}

TEST_CASE("full-model swap of two packets") {
  const ManifoldSpec spec(180, 4);
  const CMatrix x = swap_matrix(4, 0, 2);
  const GateSchedule g = compile_unitary(x, spec);
  const double f = process_fidelity(g, x, {}, 0);
  CHECK(f > 0.95);
  CHECK(f < 1.0);
  // Extra free evolution with the exact spectrum only costs fidelity.
  GateSchedule padded = g;
  padded.ops.push_back(Wait{time_scales(spec).t_kepler});
  CHECK(process_fidelity(padded, x, {}, 0) < f);
}

TEST_CASE("d = 8 gates at nbar = 180 are limited by dispersion, not by the pulses") {
  const ManifoldSpec spec(180, 8);
  const CMatrix x = swap_matrix(8, 0, 4);
  const GateSchedule g = compile_unitary(x, spec);
  SimulationOptions ideal_exact;
  ideal_exact.model = PulseModel::ideal;
  SimulationOptions full_linear;
  full_linear.mode = SpectrumMode::taylor1;
  CHECK(process_fidelity(g, x, full_linear, 0) > 0.99);
  const double dispersive = process_fidelity(g, x, ideal_exact, 0);
  CHECK(dispersive < 0.7);
  CHECK(process_fidelity(g, x, {}, 0) == doctest::Approx(dispersive).epsilon(0.02));
}

TEST_CASE("one Kepler period of free evolution against the identity") {
  const ManifoldSpec spec(180, 8);
  GateSchedule g{180, 8, {Wait{time_scales(spec).t_kepler}}, 0.0};
  const double f = process_fidelity(g, CMatrix::Identity(8, 8));
  CHECK(f == doctest::Approx(0.94).epsilon(0.02));
  CHECK(process_fidelity(g, CMatrix::Identity(8, 8), ideal_linear()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-level fragment acts on the addressed pair only") {
  const ManifoldSpec spec(180, 4);
  TwoLevelOp op;
  op.k = 1;
  op.k_prime = 3;
  op.u2 = logical_rotation(0.8, 0.3);
  const GateSchedule g = compile_two_level(op, spec);
  CHECK(g.pulse_count() > 0);
  CHECK(process_fidelity(g, reconstruct({op}, 4), ideal_linear()) == doctest::Approx(1.0).epsilon(1e-10));
  TwoLevelOp id = op;
  id.u2 = Matrix2c::Identity();
  CHECK(compile_two_level(id, spec).ops.empty());
}

TEST_CASE("storage pulse closed form") {
  const StoragePulse sp{kPi / 3, 0.4, 0.0, 100.0};
  const Matrix2c m = storage_pulse_matrix(sp);
  CHECK(is_unitary(m));
  CHECK(m.isApprox(pulse_rotation(kPi / 3, 0.4), 1e-12));
  CHECK(primitive_name(Primitive{sp}) == "storage_pulse");
  CHECK(duration_of(Primitive{sp}) == 100.0);
  CHECK(primitive_name(Primitive{Wait{1.0}}) == "wait");
}

TEST_CASE("fidelity probes and basic metric properties") {
  const auto probes = fidelity_probes(5);
  CHECK(probes.size() == 11);
  for (const auto& p : probes) CHECK(p.norm() == doctest::Approx(1.0));
  std::mt19937_64 rng(44);
  const CMatrix u = haar_unitary(5, rng);
  CHECK(process_fidelity(u, u) == doctest::Approx(1.0));
  CHECK(process_fidelity(Complex(0, 1) * u, u) == doctest::Approx(1.0));
  CHECK(process_fidelity(u, haar_unitary(5, rng)) < 0.9);
  CHECK_THROWS_AS(process_fidelity(CMatrix::Identity(3, 3), CMatrix::Identity(4, 4)), InvalidArgument);
}

TEST_CASE("compile rejects bad input") {
  const ManifoldSpec spec(180, 4);
  CHECK_THROWS_AS(compile_unitary(CMatrix::Ones(4, 4), spec), InvalidArgument);
  CHECK_THROWS_AS(compile_unitary(CMatrix::Identity(3, 3), spec), InvalidArgument);
  CHECK(compile_strategy_from_string("fragments") == CompileStrategy::fragments);
  CHECK_THROWS_AS(compile_strategy_from_string("magic"), InvalidArgument);
  CHECK(pulse_model_from_string(to_string(PulseModel::ideal)) == PulseModel::ideal);
}
