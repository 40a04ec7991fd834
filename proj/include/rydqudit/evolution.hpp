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
#include <vector>

#include "rydqudit/basis.hpp"
#include "rydqudit/manifold.hpp"
#include "rydqudit/trace.hpp"

namespace rydqudit {

/// One row of the circulant that carries packet amplitudes forward in time:
/// b~_k(t) = sum_k' b~_k'(0) u_{k'-k}(t), with
/// u_m(t) = (1/d) sum_j exp(-i omega_j0 t - i 2 pi j m / d).
struct EvolutionKernel {
  CVector entries;  ///< u_m for m = 0 .. d-1 (m taken mod d)
  double t = 0.0;
  SpectrumMode mode = SpectrumMode::exact;

  Complex weight(int m) const;
  /// Weight with which slot k-n feeds slot k, i.e. u_{-n}. Under the Kepler
  /// spectrum at t = n T_K / d this is the only nonzero entry.
  Complex forward_weight(int n) const { return weight(-n); }
};

EvolutionKernel evolution_kernel(const ManifoldSpec& spec, double t,
                                 SpectrumMode mode = SpectrumMode::exact);

/// Circular correlation of initial packet amplitudes with the kernel.
AmplitudeVector apply_kernel(const EvolutionKernel& kernel, const AmplitudeVector& bt0);

/// Field-free state: slowly varying energy amplitudes plus the clock.
struct FreeState {
  AmplitudeVector amplitudes;
  double t = 0.0;
};

/// Interaction-picture amplitudes are constant without a field, so this only
/// advances the clock. Schedules use it as the explicit wait primitive.
/// Throws InvalidArgument for dt < 0.
FreeState propagate_free(const FreeState& state, double dt);

/// Ideal cyclic permutation b~_k -> b~_{k-n}, indices mod d.
AmplitudeVector shift_gate(const AmplitudeVector& bt, int n);

/// |<SHIFT^n bt, U_free(n T_K/d) bt>|^2 under `mode`; bt defaults to the k=0
/// packet.
double shift_fidelity(const ManifoldSpec& spec, int n, SpectrumMode mode = SpectrumMode::exact);
double shift_fidelity(const ManifoldSpec& spec, int n, const AmplitudeVector& bt,
                      SpectrumMode mode = SpectrumMode::exact);

/// Packet populations and autocorrelation |<psi(0)|psi(t)>|^2 sampled on a
/// monotone grid. Columns: t_au, t_si_ns, k=<label>..., autocorr. Rows are
/// computed independently (in parallel when `threads` > 1); the result does not
/// depend on the thread count.
TraceRecord revival_scan(const ManifoldSpec& spec, const AmplitudeVector& b,
                         const std::vector<double>& t_grid,
                         SpectrumMode mode = SpectrumMode::exact, unsigned threads = 1);

/// Evenly spaced grid from t0 to t1 inclusive with spacing at most `max_step`.
std::vector<double> uniform_grid(double t0, double t1, double max_step);

struct Peak {
  double t = 0.0;
  double value = 0.0;
  std::size_t index = 0;
};

/// Largest sample of `column` with t_au in [t_lo, t_hi], refined by a parabola
/// through the three samples bracketing it. Throws NotFound for an empty window.
Peak find_peak(const TraceRecord& trace, const std::string& column, double t_lo, double t_hi);

/// Population lost from a packet in one Kepler period: 1 - |b~_0(T_K)|^2
/// starting from b~ = delta_{k,0}.
double one_period_decay(const ManifoldSpec& spec, SpectrumMode mode = SpectrumMode::exact);

}  // namespace rydqudit
