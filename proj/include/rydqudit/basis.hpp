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

#include <complex>

#include <Eigen/Dense>

#include "rydqudit/manifold.hpp"

namespace rydqudit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class Basis { energy, packet };

/// Complex amplitudes over the d manifold levels, tagged with the basis they
/// are expressed in. Energy amplitudes are the slowly varying b_j (the
/// exp(-i omega_j t) phases are not stored); packet amplitudes are b~_k with
/// the centre frequency removed.
class AmplitudeVector {
 public:
  AmplitudeVector(Basis basis, CVector values);

  Basis basis() const noexcept { return basis_; }
  int d() const noexcept { return static_cast<int>(values_.size()); }
  const CVector& values() const noexcept { return values_; }
  CVector& values() noexcept { return values_; }
  Complex operator[](int slot) const { return values_[slot]; }

  double norm_squared() const { return values_.squaredNorm(); }
  bool is_normalized(double tol = 1e-10) const;

  /// Throws InvalidArgument when the tag is not `expected`.
  void require(Basis expected) const;

 private:
  Basis basis_;
  CVector values_;
};

AmplitudeVector energy_delta(const ManifoldSpec& spec, int j);
AmplitudeVector packet_delta(const ManifoldSpec& spec, int k);
/// b_j = 1/sqrt(d): the pulsed-excitation state, all weight in packet k=0.
AmplitudeVector uniform_energy(const ManifoldSpec& spec);
/// b~_k = 1/sqrt(d) with equal phases (the j=0 energy eigenstate).
AmplitudeVector uniform_packets(const ManifoldSpec& spec);

/// Component map from energy to packet amplitudes at t = 0:
/// F(k, j) = exp(+i 2 pi j k / d) / sqrt(d), rows and columns in slot order.
///
/// The packet basis kets themselves carry the conjugate kernel,
/// |k> = sum_j exp(-i 2 pi j k / d) / sqrt(d) |j>, so b~_k = <k|psi> picks up
/// the + sign. Tables are built once per (d, j_min) and shared read-only.
const CMatrix& packet_transform(const ManifoldSpec& spec);

/// Energy components of the packet basis ket |k>.
CVector packet_basis_ket(const ManifoldSpec& spec, int k);

AmplitudeVector qft_energy_to_packet(const ManifoldSpec& spec, const AmplitudeVector& b);
AmplitudeVector iqft_packet_to_energy(const ManifoldSpec& spec, const AmplitudeVector& bt);

/// b~_k(t) = (1/sqrt d) sum_j b_j exp(-i omega_j0 t) exp(i 2 pi j k / d).
AmplitudeVector packet_amplitudes_at(const ManifoldSpec& spec, const AmplitudeVector& b,
                                     double t, SpectrumMode mode = SpectrumMode::exact);

/// Inverse of packet_amplitudes_at: slowly varying b_j that produce the given
/// packet amplitudes at time t.
AmplitudeVector energy_amplitudes_from_packets(const ManifoldSpec& spec,
                                               const AmplitudeVector& bt, double t,
                                               SpectrumMode mode = SpectrumMode::exact);

/// exp(-i omega_j0 t) in slot order.
CVector free_phases(const ManifoldSpec& spec, double t, SpectrumMode mode);

}  // namespace rydqudit
