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

#include "oracles.hpp"
#include "rydqudit/error.hpp"
#include "rydqudit/evolution.hpp"

using namespace rydqudit;

namespace {
AmplitudeVector random_packets(int d, std::mt19937_64& rng) {
  const auto v = oracle::random_state(d, rng);
  CVector out(d);
  for (int i = 0; i < d; ++i) out[i] = v[static_cast<std::size_t>(i)];
  return {Basis::packet, out};
}
}  // namespace

TEST_CASE("kernel at t = 0 is the identity") {
  const ManifoldSpec spec(180, 8);
  const auto u = evolution_kernel(spec, 0.0);
  CHECK(std::abs(u.weight(0) - 1.0) < 1e-15);
  for (int m = 1; m < 8; ++m) CHECK(std::abs(u.weight(m)) < 1e-15);
}

TEST_CASE("linear spectrum moves the packet forward one slot per T_K/d") {
  const ManifoldSpec spec(180, 8);
  const double slot = time_scales(spec).t_kepler / 8;
  for (int n = 0; n < 16; ++n) {
    const auto u = evolution_kernel(spec, n * slot, SpectrumMode::taylor1);
    CHECK(std::abs(std::abs(u.forward_weight(n)) - 1.0) < 1e-12);
    // The literal entries put the peak at m = -n.
    CHECK(std::abs(std::abs(u.weight(-n)) - 1.0) < 1e-12);
  }
}

TEST_CASE("kernel evolution equals direct evolution") {
  std::mt19937_64 rng(21);
  const ManifoldSpec spec(180, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto bt = random_packets(8, rng);
    const double t = 1.0e7 * (trial + 0.37);
    const auto lib = apply_kernel(evolution_kernel(spec, t), bt);
    const oracle::Vec v(bt.values().data(), bt.values().data() + 8);
    const auto ref = oracle::evolve_packets(180, v, t);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(lib[k] - ref[static_cast<std::size_t>(k)]) < 1e-12);
    const FreeState moved = propagate_free({iqft_packet_to_energy(spec, bt), 0.0}, t);
    CHECK(moved.t == t);
    const auto via_state = packet_amplitudes_at(spec, moved.amplitudes, moved.t);
    CHECK((via_state.values() - lib.values()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("free propagation keeps energy amplitudes and rejects negative steps") {
  const ManifoldSpec spec(180, 4);
  const FreeState s{uniform_energy(spec), 5.0};
  const FreeState out = propagate_free(s, 10.0);
  CHECK(out.t == 15.0);
  CHECK(out.amplitudes.values().isApprox(s.amplitudes.values()));
  CHECK_THROWS_AS(propagate_free(s, -1.0), InvalidArgument);
}

TEST_CASE("shift gate is a cyclic permutation consistent with free evolution") {
  std::mt19937_64 rng(22);
  for (int d : {4, 5, 8}) {
    const ManifoldSpec spec(180, d);
    const auto bt = random_packets(d, rng);
    for (int n = -d; n <= 2 * d; ++n) {
      const auto shifted = shift_gate(bt, n);
      const auto b = energy_amplitudes_from_packets(spec, bt, 0.0, SpectrumMode::taylor1);
      const auto evolved = packet_amplitudes_at(spec, b, n * time_scales(spec).t_kepler / d, SpectrumMode::taylor1);
      CHECK((shifted.values() - evolved.values()).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(shift_fidelity(spec, 3, SpectrumMode::taylor1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exact-spectrum shift fidelity after one Kepler period") {
  const ManifoldSpec spec(180, 8);
  // Frozen oracle value for the uniform-packet probe.
  CHECK(shift_fidelity(spec, 8) == doctest::Approx(0.933357).epsilon(1e-5));
  CHECK(shift_fidelity(spec, 8) < shift_fidelity(spec, 1));
}

TEST_CASE("one-period decay matches the naive autocorrelation") {
  for (int nbar : {120, 180, 360}) {
    const ManifoldSpec spec(nbar, 8);
    const double ref = 1.0 - oracle::autocorrelation(nbar, 8, oracle::kepler(nbar));
    CHECK(one_period_decay(spec) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(one_period_decay(ManifoldSpec(180, 8)) == doctest::Approx(0.0666428).epsilon(1e-5));
  CHECK(one_period_decay(ManifoldSpec(180, 8), SpectrumMode::taylor1) < 1e-12);
}

TEST_CASE("revival scan columns and peak finding") {
  const ManifoldSpec spec(180, 8);
  const TimeScales ts = time_scales(spec);
  const auto grid = uniform_grid(0.45 * ts.t_revival, 0.55 * ts.t_revival, ts.t_kepler / 40);
  CHECK(grid.front() == doctest::Approx(0.45 * ts.t_revival));
  CHECK(grid.back() == doctest::Approx(0.55 * ts.t_revival));
  const TraceRecord serial = revival_scan(spec, energy_delta(spec, 0), grid);
  CHECK(serial.columns.front() == "t_au");
  CHECK(serial.columns.back() == "autocorr");
  CHECK(serial.rows.size() == grid.size());
  // Threading does not change the values.
  const TraceRecord parallel = revival_scan(spec, iqft_packet_to_energy(spec, packet_delta(spec, 0)), grid,
                                            SpectrumMode::exact, 4);
  const TraceRecord packet = revival_scan(spec, iqft_packet_to_energy(spec, packet_delta(spec, 0)), grid);
  CHECK(parallel.rows == packet.rows);
  const Peak p = find_peak(packet, "autocorr", 0.45 * ts.t_revival, 0.55 * ts.t_revival);
  // Frozen: first revival near T_rev/2 recovers to 0.959.
  CHECK(p.value == doctest::Approx(0.959).epsilon(2e-3));
  CHECK(p.t / ts.t_revival == doctest::Approx(0.5039).epsilon(2e-3));
  CHECK(oracle::autocorrelation(180, 8, p.t) == doctest::Approx(p.value).epsilon(5e-3));
  CHECK_THROWS(find_peak(packet, "missing", 0, 1));
}
