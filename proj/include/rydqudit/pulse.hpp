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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rydqudit/basis.hpp"
#include "rydqudit/manifold.hpp"
#include "rydqudit/ode.hpp"
#include "rydqudit/trace.hpp"

namespace rydqudit {

/// Low-lying level that holds a de-excited packet amplitude.
enum class StorageLevel { g, e };

std::string_view to_string(StorageLevel level);
StorageLevel storage_level_from_string(std::string_view name);

/// Gaussian transform-limited pulse. Field amplitude envelope
/// f(t) = exp(-4 ln2 (t - t_c)^2 / tau_p^2), truncated at +-4 sigma.
struct PulseSpec {
  double carrier_detuning = 0.0;  ///< Delta_0, a.u.
  double tau_p = 0.0;             ///< amplitude FWHM, a.u.
  double peak_rabi = 0.0;         ///< Omega_ref: j=0 Rabi frequency at the peak
  double phase = 0.0;
  double center_time = 0.0;
  StorageLevel target = StorageLevel::g;

  double sigma() const;
  double half_support() const { return 4.0 * sigma(); }
  double start() const { return center_time - half_support(); }
  double end() const { return center_time + half_support(); }
};

/// Envelope value; zero outside the truncated support.
double envelope(const PulseSpec& pulse, double t);

/// Integral of the truncated envelope: sigma sqrt(2 pi) erf(2 sqrt 2).
double envelope_area(double tau_p);

/// Field-free manifold amplitudes plus the two storage amplitudes.
struct SimulationState {
  ManifoldSpec spec;
  CVector b_energy;  ///< slowly varying b_j, slot order
  Complex b_g = 0.0;
  Complex b_e = 0.0;
  double t = 0.0;

  SimulationState(ManifoldSpec spec, CVector b_energy, double t = 0.0);
  /// State whose packet amplitudes equal `bt` at time t.
  static SimulationState from_packets(const ManifoldSpec& spec, const AmplitudeVector& bt,
                                      double t, SpectrumMode mode = SpectrumMode::exact);

  AmplitudeVector energy() const { return {Basis::energy, b_energy}; }
  AmplitudeVector packets(SpectrumMode mode = SpectrumMode::exact) const;
  double total_population() const;
};

struct RabiProfile {
  Eigen::VectorXd omega_j;  ///< slot order
  CVector omega_tilde_k;    ///< slot order of packet labels
};

/// Omega_j = Omega_ref ((nbar + j)/nbar)^exponent and
/// Omega~_k = (1/sqrt d) sum_j Omega_j exp(-i 2 pi j k / d). The default
/// exponent is the dipole scaling -3/2; pass 0 for a flat profile.
RabiProfile rabi_profile(const ManifoldSpec& spec, double omega_ref, double exponent = -1.5);

struct PulseOptions {
  SpectrumMode mode = SpectrumMode::exact;
  double rabi_exponent = -1.5;
  /// Tolerances and step cap. The cap is further limited to
  /// min(tau_p / 50, 2 pi / (10 max|Delta_j|)).
  OdeOptions ode;
  /// Trace rows at evenly spaced times across the support (start and end are
  /// always recorded).
  std::size_t trace_samples = 0;
  /// When non-empty, trace rows are taken exactly at these times instead
  /// (ascending; entries outside the support are ignored).
  std::vector<double> sample_times;
  /// Called with the full state at every recorded trace row.
  std::function<void(const SimulationState&)> on_sample;
};

struct PulseResult {
  SimulationState state;
  TraceRecord trace;  ///< t_au, |b_g|^2, |b_e|^2, k=..., norm_error
  OdeStats stats;
};

/// Full multilevel rotating-wave integration across the truncated support:
///   db_s/dt = (i/2) f e^{i phi} sum_j Omega_j e^{-i Delta_j t} b_j
///   db_j/dt = (i/2) f e^{-i phi} Omega_j e^{i Delta_j t} b_s
/// with Delta_j = omega_j0 + Delta_0 and s the target storage level. The
/// state clock must not be past the pulse start; it ends at the pulse end.
PulseResult integrate_pulse(const SimulationState& state, const PulseSpec& pulse,
                            const PulseOptions& options = {});

struct TwoLevelAmplitudes {
  Complex b_g;
  Complex bt0;
};

/// Storage level coupled to the core packet alone with packet Rabi frequency
/// omega_tilde_0 (the peak value). Resonant pulses use the closed form
/// rotation by theta = |omega_tilde_0| * envelope_area; detuned pulses
/// integrate the two-amplitude equations over the support, with time measured
/// from the pulse centre.
TwoLevelAmplitudes two_level_oracle(Complex b_g0, Complex bt00, const PulseSpec& pulse,
                                    Complex omega_tilde_0);

/// Peak Omega_ref giving pulse area `area` on the core packet:
/// area = |Omega~_0| * integral of f over the truncated support.
double calibrate_peak_rabi(const ManifoldSpec& spec, double tau_p, double area,
                           double exponent = -1.5);

/// Peak scale for a pi rotation given |Omega~_0| per unit Omega_ref.
double pi_pulse_area_calibration(const PulseSpec& pulse, double omega_tilde_0_per_ref);

struct PulseReport {
  bool duration_ok = false;   ///< tau_p < T_K / d
  bool bandwidth_ok = false;  ///< spectral FWHM at most twice d / T_K
  /// Ordinary-frequency FWHM, 2 ln2 / (pi tau_p).
  double spectral_fwhm = 0.0;
  /// FWHM of |field amplitude spectrum|, 4 ln2 / (pi tau_p).
  double field_amplitude_spectrum_fwhm = 0.0;
  double time_bandwidth_product = 0.0;  ///< spectral_fwhm * tau_p
  double fwhm_in_level_spacings = 0.0;  ///< spectral_fwhm / (d / T_K)
  double duration_in_slots = 0.0;       ///< tau_p / (T_K / d)
  std::vector<std::string> warnings;

  bool ok() const { return duration_ok; }
};

/// Never throws.
PulseReport validate_pulse(const ManifoldSpec& spec, const PulseSpec& pulse);

}  // namespace rydqudit
