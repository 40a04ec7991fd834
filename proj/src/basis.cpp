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

#include "rydqudit/basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "rydqudit/error.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

AmplitudeVector::AmplitudeVector(Basis basis, CVector values)
    : basis_(basis), values_(std::move(values)) {}

bool AmplitudeVector::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

void AmplitudeVector::require(Basis expected) const {
  if (basis_ != expected) {
    throw InvalidArgument(expected == Basis::energy ? "expected energy-basis amplitudes"
                                                    : "expected packet-basis amplitudes");
  }
}

AmplitudeVector energy_delta(const ManifoldSpec& spec, int j) {
  CVector v = CVector::Zero(spec.d());
  v[spec.slot_of(j)] = 1.0;
  return {Basis::energy, std::move(v)};
}

AmplitudeVector packet_delta(const ManifoldSpec& spec, int k) {
  CVector v = CVector::Zero(spec.d());
  v[spec.slot_of(k)] = 1.0;
  return {Basis::packet, std::move(v)};
}

AmplitudeVector uniform_energy(const ManifoldSpec& spec) {
  return {Basis::energy, CVector::Constant(spec.d(), 1.0 / std::sqrt(double(spec.d())))};
}

AmplitudeVector uniform_packets(const ManifoldSpec& spec) {
  return {Basis::packet, CVector::Constant(spec.d(), 1.0 / std::sqrt(double(spec.d())))};
}

namespace {

// exp(i 2 pi m / d) for an integer m, reduced first so large products of
// labels keep full precision.
Complex unit_root(long long m, int d) {
  long long r = m % d;
  if (r < 0) r += d;
  const double angle = 2.0 * units::kPi * static_cast<double>(r) / d;
  return {std::cos(angle), std::sin(angle)};
}

CMatrix build_transform(const ManifoldSpec& spec) {
  const int d = spec.d();
  const double scale = 1.0 / std::sqrt(double(d));
  CMatrix f(d, d);
  for (int ks = 0; ks < d; ++ks) {
    const long long k = spec.label_at(ks);
    for (int js = 0; js < d; ++js) {
      const long long j = spec.label_at(js);
      f(ks, js) = scale * unit_root(j * k, d);
    }
  }
  return f;
}

}  // namespace

const CMatrix& packet_transform(const ManifoldSpec& spec) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const CMatrix>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{spec.d(), spec.j_min()}];
  if (!slot) slot = std::make_unique<const CMatrix>(build_transform(spec));
  return *slot;
}

CVector packet_basis_ket(const ManifoldSpec& spec, int k) {
  spec.slot_of(k);
  const int d = spec.d();
  CVector ket(d);
  for (int js = 0; js < d; ++js) {
    ket[js] = std::conj(unit_root(static_cast<long long>(spec.label_at(js)) * k, d)) /
              std::sqrt(double(d));
  }
  return ket;
}

namespace {
void require_dimension(const ManifoldSpec& spec, const AmplitudeVector& v) {
  if (v.d() != spec.d()) {
    throw InvalidArgument("amplitude vector has " + std::to_string(v.d()) + " entries, manifold has " +
                          std::to_string(spec.d()));
  }
}
}  // namespace

AmplitudeVector qft_energy_to_packet(const ManifoldSpec& spec, const AmplitudeVector& b) {
  b.require(Basis::energy);
  require_dimension(spec, b);
  return {Basis::packet, packet_transform(spec) * b.values()};
}

AmplitudeVector iqft_packet_to_energy(const ManifoldSpec& spec, const AmplitudeVector& bt) {
  bt.require(Basis::packet);
  require_dimension(spec, bt);
  return {Basis::energy, packet_transform(spec).adjoint() * bt.values()};
}

CVector free_phases(const ManifoldSpec& spec, double t, SpectrumMode mode) {
  const auto w = detunings(spec, mode);
  CVector out(spec.d());
  for (int s = 0; s < spec.d(); ++s) out[s] = std::polar(1.0, -w[static_cast<std::size_t>(s)] * t);
  return out;
}

AmplitudeVector packet_amplitudes_at(const ManifoldSpec& spec, const AmplitudeVector& b,
                                     double t, SpectrumMode mode) {
  b.require(Basis::energy);
  require_dimension(spec, b);
  if (!std::isfinite(t)) throw InvalidArgument("time must be finite");
  const CVector rotated = free_phases(spec, t, mode).cwiseProduct(b.values());
  return {Basis::packet, packet_transform(spec) * rotated};
}

AmplitudeVector energy_amplitudes_from_packets(const ManifoldSpec& spec,
                                               const AmplitudeVector& bt, double t,
                                               SpectrumMode mode) {
  bt.require(Basis::packet);
  require_dimension(spec, bt);
  if (!std::isfinite(t)) throw InvalidArgument("time must be finite");
  const CVector lab = packet_transform(spec).adjoint() * bt.values();
  return {Basis::energy, free_phases(spec, t, mode).conjugate().cwiseProduct(lab)};
}

}  // namespace rydqudit
