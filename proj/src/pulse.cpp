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

#include "rydqudit/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "rydqudit/error.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

using units::kLn2;
using units::kPi;

std::string_view to_string(StorageLevel level) {
  return level == StorageLevel::g ? "g" : "e";
}

StorageLevel storage_level_from_string(std::string_view name) {
  if (name == "g") return StorageLevel::g;
  if (name == "e") return StorageLevel::e;
  throw InvalidArgument("unknown storage level '" + std::string(name) + "' (expected g or e)");
}

double PulseSpec::sigma() const { return tau_p / (2.0 * std::sqrt(2.0 * kLn2)); }

double envelope(const PulseSpec& pulse, double t) {
  const double x = t - pulse.center_time;
  if (std::abs(x) > pulse.half_support()) return 0.0;
  return std::exp(-4.0 * kLn2 * x * x / (pulse.tau_p * pulse.tau_p));
}

double envelope_area(double tau_p) {
  if (!(tau_p > 0.0)) throw InvalidArgument("tau_p must be positive");
  const double sigma = tau_p / (2.0 * std::sqrt(2.0 * kLn2));
  return sigma * std::sqrt(2.0 * kPi) * std::erf(2.0 * std::sqrt(2.0));
}

SimulationState::SimulationState(ManifoldSpec s, CVector b, double time)
    : spec(std::move(s)), b_energy(std::move(b)), t(time) {
  if (b_energy.size() != spec.d()) throw InvalidArgument("amplitude vector length != d");
}

SimulationState SimulationState::from_packets(const ManifoldSpec& spec, const AmplitudeVector& bt,
                                              double t, SpectrumMode mode) {
  return {spec, energy_amplitudes_from_packets(spec, bt, t, mode).values(), t};
}

AmplitudeVector SimulationState::packets(SpectrumMode mode) const {
  return packet_amplitudes_at(spec, energy(), t, mode);
}

double SimulationState::total_population() const {
  return b_energy.squaredNorm() + std::norm(b_g) + std::norm(b_e);
}

RabiProfile rabi_profile(const ManifoldSpec& spec, double omega_ref, double exponent) {
  const int d = spec.d();
  RabiProfile p;
  p.omega_j.resize(d);
  for (int s = 0; s < d; ++s) {
    const double ratio = double(spec.nbar() + spec.label_at(s)) / spec.nbar();
    p.omega_j[s] = omega_ref * std::pow(ratio, exponent);
  }
  // The conjugate of the amplitude transform carries exp(-i 2 pi j k / d).
  p.omega_tilde_k = packet_transform(spec).conjugate() * p.omega_j.cast<Complex>();
  return p;
}

namespace {

double max_step_for(const ManifoldSpec& spec, const PulseSpec& pulse, const PulseOptions& o) {
  double cap = std::min(o.ode.max_step, pulse.tau_p / 50.0);
  double max_delta = 0.0;
  for (double w : detunings(spec, o.mode)) {
    max_delta = std::max(max_delta, std::abs(w + pulse.carrier_detuning));
  }
  if (max_delta > 0.0) cap = std::min(cap, 2.0 * kPi / (10.0 * max_delta));
  return cap;
}

void append_row(TraceRecord& trace, const CVector& y, const ManifoldSpec& spec, double t,
                SpectrumMode mode, double norm0, const PulseOptions& options) {
  const int d = spec.d();
  if (options.on_sample) {
    SimulationState s(spec, y.head(d), t);
    s.b_g = y[d];
    s.b_e = y[d + 1];
    options.on_sample(s);
  }
  std::vector<double> row;
  row.reserve(trace.columns.size());
  row.push_back(t);
  row.push_back(std::norm(y[d]));
  row.push_back(std::norm(y[d + 1]));
  const AmplitudeVector bt =
      packet_amplitudes_at(spec, AmplitudeVector(Basis::energy, y.head(d)), t, mode);
  for (int k = 0; k < d; ++k) row.push_back(std::norm(bt[k]));
  row.push_back(y.squaredNorm() - norm0);
  trace.add_row(std::move(row));
}

}  // namespace

PulseResult integrate_pulse(const SimulationState& state, const PulseSpec& pulse,
                            const PulseOptions& options) {
  if (!(pulse.tau_p > 0.0)) throw InvalidArgument("tau_p must be positive");
  if (state.t > pulse.start() + 1e-9 * pulse.tau_p) {
    throw InvalidArgument("pulse starts before the current simulation time");
  }
  const ManifoldSpec& spec = state.spec;
  const int d = spec.d();
  const int s = pulse.target == StorageLevel::g ? d : d + 1;

  const RabiProfile profile = rabi_profile(spec, pulse.peak_rabi, options.rabi_exponent);
  std::vector<double> delta = detunings(spec, options.mode);
  for (double& w : delta) w += pulse.carrier_detuning;

  CVector y(d + 2);
  y.head(d) = state.b_energy;
  y[d] = state.b_g;
  y[d + 1] = state.b_e;
  const double norm0 = y.squaredNorm();

  const Complex up = std::polar(1.0, pulse.phase);
  const Complex down = std::conj(up);
  const Eigen::VectorXd& omega = profile.omega_j;
  CVector rot(d);
  OdeRhs rhs = [&](double t, const CVector& yy, CVector& dy) {
    const double f = envelope(pulse, t);
    for (int j = 0; j < d; ++j) rot[j] = std::polar(omega[j], delta[static_cast<std::size_t>(j)] * t);
    const Complex half_f(0.0, 0.5 * f);
    Complex sum = 0.0;
    for (int j = 0; j < d; ++j) sum += std::conj(rot[j]) * yy[j];
    dy.setZero();
    dy[s] = half_f * up * sum;
    const Complex bs = yy[s];
    for (int j = 0; j < d; ++j) dy[j] = half_f * down * rot[j] * bs;
  };

  OdeOptions ode = options.ode;
  ode.max_step = max_step_for(spec, pulse, options);

  PulseResult result{state, {}, {}};
  result.trace.columns = {"t_au", "pop_g", "pop_e"};
  for (auto& c : packet_columns(spec)) result.trace.columns.push_back(std::move(c));
  result.trace.columns.push_back("norm_error");

  const double t0 = pulse.start();
  const double t1 = pulse.end();
  std::vector<double> stops;
  std::vector<bool> record;
  if (options.sample_times.empty()) {
    append_row(result.trace, y, spec, t0, options.mode, norm0, options);
    const std::size_t segments = options.trace_samples + 1;
    for (std::size_t i = 1; i <= segments; ++i) {
      stops.push_back(i == segments ? t1 : t0 + (t1 - t0) * double(i) / double(segments));
      record.push_back(true);
    }
  } else {
    for (double ts : options.sample_times) {
      if (ts < t0 || ts > t1) continue;
      if (!stops.empty() && ts < stops.back()) throw InvalidArgument("sample times must ascend");
      stops.push_back(ts);
      record.push_back(true);
    }
    if (stops.empty() || stops.back() < t1) {
      stops.push_back(t1);
      record.push_back(false);
    }
  }
  double ta = t0;
  for (std::size_t i = 0; i < stops.size(); ++i) {
    const double tb = stops[i];
    const OdeStats st = integrate_dopri5(rhs, ta, tb, y, ode);
    result.stats.accepted += st.accepted;
    result.stats.rejected += st.rejected;
    result.stats.evaluations += st.evaluations;
    if (st.accepted > 0) result.stats.last_step = st.last_step;
    if (record[i]) append_row(result.trace, y, spec, tb, options.mode, norm0, options);
    ta = tb;
  }

  result.state.b_energy = y.head(d);
  result.state.b_g = y[d];
  result.state.b_e = y[d + 1];
  result.state.t = t1;
  return result;
}

TwoLevelAmplitudes two_level_oracle(Complex b_g0, Complex bt00, const PulseSpec& pulse,
                                    Complex omega_tilde_0) {
  const double area = std::abs(omega_tilde_0) * envelope_area(pulse.tau_p);
  const double phi = pulse.phase + std::arg(omega_tilde_0);
  if (pulse.carrier_detuning == 0.0) {
    const double c = std::cos(area / 2.0), s = std::sin(area / 2.0);
    const Complex i(0.0, 1.0);
    return {c * b_g0 + i * std::polar(s, phi) * bt00, i * std::polar(s, -phi) * b_g0 + c * bt00};
  }
  const double mag = std::abs(omega_tilde_0);
  const double dl = pulse.carrier_detuning;
  PulseSpec centred = pulse;
  centred.center_time = 0.0;
  OdeRhs rhs = [&](double t, const CVector& yy, CVector& dy) {
    const Complex half_f(0.0, 0.5 * mag * envelope(centred, t));
    dy[0] = half_f * std::polar(1.0, phi - dl * t) * yy[1];
    dy[1] = half_f * std::polar(1.0, dl * t - phi) * yy[0];
  };
  CVector y(2);
  y << b_g0, bt00;
  OdeOptions ode;
  ode.max_step = std::min(pulse.tau_p / 50.0, 2.0 * kPi / (10.0 * std::abs(dl)));
  integrate_dopri5(rhs, centred.start(), centred.end(), y, ode);
  return {y[0], y[1]};
}

double calibrate_peak_rabi(const ManifoldSpec& spec, double tau_p, double area, double exponent) {
  const double per_ref = std::abs(rabi_profile(spec, 1.0, exponent).omega_tilde_k[spec.slot_of(0)]);
  return std::abs(area) / (per_ref * envelope_area(tau_p));
}

double pi_pulse_area_calibration(const PulseSpec& pulse, double omega_tilde_0_per_ref) {
  if (!(omega_tilde_0_per_ref > 0.0)) throw InvalidArgument("Omega~_0 must be positive");
  return kPi / (omega_tilde_0_per_ref * envelope_area(pulse.tau_p));
}

PulseReport validate_pulse(const ManifoldSpec& spec, const PulseSpec& pulse) {
  PulseReport r;
  if (!(pulse.tau_p > 0.0) || !std::isfinite(pulse.tau_p)) {
    r.warnings.push_back("tau_p must be positive and finite");
    return r;
  }
  const double slot = time_scales(spec).t_kepler / spec.d();
  r.spectral_fwhm = 2.0 * kLn2 / (kPi * pulse.tau_p);
  r.field_amplitude_spectrum_fwhm = 4.0 * kLn2 / (kPi * pulse.tau_p);
  r.time_bandwidth_product = r.spectral_fwhm * pulse.tau_p;
  r.fwhm_in_level_spacings = r.spectral_fwhm * slot;
  r.duration_in_slots = pulse.tau_p / slot;
  r.duration_ok = pulse.tau_p < slot;
  r.bandwidth_ok = r.fwhm_in_level_spacings <= 2.0;
  if (!r.duration_ok) {
    std::ostringstream os;
    os << "tau_p = " << r.duration_in_slots << " T_K/d does not resolve single packets";
    r.warnings.push_back(os.str());
  }
  if (!r.bandwidth_ok) {
    std::ostringstream os;
    os << "spectral FWHM = " << r.fwhm_in_level_spacings
       << " d/T_K reaches levels outside the manifold";
    r.warnings.push_back(os.str());
  }
  return r;
}

}  // namespace rydqudit
