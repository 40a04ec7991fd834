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

#include "rydqudit/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <utility>

#include "rydqudit/error.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

namespace {

int wrap(int m, int d) {
  int r = m % d;
  return r < 0 ? r + d : r;
}

}  // namespace

Complex EvolutionKernel::weight(int m) const {
  return entries[wrap(m, static_cast<int>(entries.size()))];
}

EvolutionKernel evolution_kernel(const ManifoldSpec& spec, double t, SpectrumMode mode) {
  if (!std::isfinite(t)) throw InvalidArgument("time must be finite");
  const int d = spec.d();
  const auto w = detunings(spec, mode);
  EvolutionKernel kernel;
  kernel.t = t;
  kernel.mode = mode;
  kernel.entries = CVector::Zero(d);
  for (int m = 0; m < d; ++m) {
    Complex sum = 0.0;
    for (int s = 0; s < d; ++s) {
      const long long j = spec.label_at(s);
      const int r = wrap(static_cast<int>((j * m) % d), d);
      const double angle = -w[static_cast<std::size_t>(s)] * t - 2.0 * units::kPi * r / d;
      sum += std::polar(1.0, angle);
    }
    kernel.entries[m] = sum / double(d);
  }
  return kernel;
}

AmplitudeVector apply_kernel(const EvolutionKernel& kernel, const AmplitudeVector& bt0) {
  bt0.require(Basis::packet);
  const int d = bt0.d();
  if (kernel.entries.size() != d) throw InvalidArgument("kernel and state dimensions differ");
  CVector out = CVector::Zero(d);
  // Slot differences equal label differences mod d.
  for (int k = 0; k < d; ++k) {
    for (int kp = 0; kp < d; ++kp) out[k] += bt0[kp] * kernel.weight(kp - k);
  }
  return {Basis::packet, std::move(out)};
}

FreeState propagate_free(const FreeState& state, double dt) {
  if (!(dt >= 0.0)) throw InvalidArgument("free evolution needs dt >= 0");
  state.amplitudes.require(Basis::energy);
  return {state.amplitudes, state.t + dt};
}

AmplitudeVector shift_gate(const AmplitudeVector& bt, int n) {
  bt.require(Basis::packet);
  const int d = bt.d();
  CVector out(d);
  for (int k = 0; k < d; ++k) out[k] = bt[wrap(k - n, d)];
  return {Basis::packet, std::move(out)};
}

double shift_fidelity(const ManifoldSpec& spec, int n, SpectrumMode mode) {
  return shift_fidelity(spec, n, packet_delta(spec, 0), mode);
}

double shift_fidelity(const ManifoldSpec& spec, int n, const AmplitudeVector& bt,
                      SpectrumMode mode) {
  const double t = n * time_scales(spec).t_kepler / spec.d();
  const AmplitudeVector ideal = shift_gate(bt, n);
  const AmplitudeVector evolved = apply_kernel(evolution_kernel(spec, t, mode), bt);
  return std::norm(ideal.values().dot(evolved.values()));
}

TraceRecord revival_scan(const ManifoldSpec& spec, const AmplitudeVector& b,
                         const std::vector<double>& t_grid, SpectrumMode mode,
                         unsigned threads) {
  b.require(Basis::energy);
  if (t_grid.empty()) throw InvalidArgument("revival scan needs a non-empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= t_grid[i - 1])) throw InvalidArgument("time grid must be monotone");
  }
  const int d = spec.d();
  TraceRecord trace;
  trace.columns = {"t_au", "t_si_ns"};
  for (auto& c : packet_columns(spec)) trace.columns.push_back(std::move(c));
  trace.columns.push_back("autocorr");
  trace.rows.assign(t_grid.size(), std::vector<double>(trace.columns.size()));

  const CVector weights = b.values().cwiseAbs2();
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double t = t_grid[i];
      auto& row = trace.rows[i];
      row[0] = t;
      row[1] = units::au_to_ns(t);
      const CVector phases = free_phases(spec, t, mode);
      const AmplitudeVector bt = packet_amplitudes_at(spec, b, t, mode);
      for (int k = 0; k < d; ++k) row[2 + static_cast<std::size_t>(k)] = std::norm(bt[k]);
      // <psi(0)|psi(t)> = sum_j |b_j|^2 exp(-i omega_j0 t)
      row.back() = std::norm(weights.dot(phases));
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(t_grid.size())));
  if (n == 1) {
    fill(0, t_grid.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (t_grid.size() + n - 1) / n;
    for (unsigned w = 0; w < n; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(t_grid.size(), begin + chunk);
      if (begin < end) pool.emplace_back(fill, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return trace;
}

std::vector<double> uniform_grid(double t0, double t1, double max_step) {
  if (!(t1 >= t0) || !(max_step > 0.0)) throw InvalidArgument("bad grid bounds");
  const auto intervals = static_cast<std::size_t>(std::ceil((t1 - t0) / max_step));
  if (intervals == 0) return {t0};
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(intervals);
  }
  return grid;
}

Peak find_peak(const TraceRecord& trace, const std::string& column, double t_lo, double t_hi) {
  const std::size_t tc = trace.column("t_au");
  const std::size_t vc = trace.column(column);
  bool found = false;
  Peak best;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const double t = trace.rows[i][tc];
    if (t < t_lo || t > t_hi) continue;
    const double v = trace.rows[i][vc];
    if (!found || v > best.value) {
      best = {t, v, i};
      found = true;
    }
  }
  if (!found) throw NotFound("no samples inside the peak window");
  const std::size_t i = best.index;
  if (i > 0 && i + 1 < trace.rows.size()) {
    const double t0 = trace.rows[i - 1][tc], t1 = trace.rows[i][tc], t2 = trace.rows[i + 1][tc];
    const double y0 = trace.rows[i - 1][vc], y1 = trace.rows[i][vc], y2 = trace.rows[i + 1][vc];
    const double h = t1 - t0;
    // Parabola vertex; only for evenly spaced samples with a true interior max.
    const double curvature = y0 - 2.0 * y1 + y2;
    if (std::abs((t2 - t1) - h) <= 1e-9 * std::abs(h) && curvature < 0.0) {
      const double offset = 0.5 * h * (y0 - y2) / curvature;
      best.t = t1 + offset;
      best.value = y1 - 0.125 * (y0 - y2) * (y0 - y2) / curvature;
    }
  }
  return best;
}

double one_period_decay(const ManifoldSpec& spec, SpectrumMode mode) {
  const double tk = time_scales(spec).t_kepler;
  const EvolutionKernel kernel = evolution_kernel(spec, tk, mode);
  return 1.0 - std::norm(kernel.entries[0]);
}

}  // namespace rydqudit
