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

#include "rydqudit/manifold.hpp"

#include <cmath>
#include <string>

#include "rydqudit/error.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

using units::kPi;

std::string_view to_string(SpectrumMode mode) {
  switch (mode) {
    case SpectrumMode::exact:
      return "exact";
    case SpectrumMode::taylor1:
      return "taylor1";
    case SpectrumMode::taylor2:
      return "taylor2";
    case SpectrumMode::taylor3:
      return "taylor3";
  }
  return "exact";
}

SpectrumMode spectrum_mode_from_string(std::string_view name) {
  if (name == "exact") return SpectrumMode::exact;
  if (name == "taylor1") return SpectrumMode::taylor1;
  if (name == "taylor2") return SpectrumMode::taylor2;
  if (name == "taylor3") return SpectrumMode::taylor3;
  throw InvalidArgument("unknown spectrum mode '" + std::string(name) + "'");
}

ManifoldSpec::ManifoldSpec(int nbar, int d) : ManifoldSpec(nbar, d, false) {}

ManifoldSpec ManifoldSpec::single_level(int nbar) { return ManifoldSpec(nbar, 1, true); }

ManifoldSpec::ManifoldSpec(int nbar, int d, bool allow_single) : nbar_(nbar), d_(d) {
  if (d < (allow_single ? 1 : 2)) {
    throw InvalidArgument("manifold needs d >= 2 levels, got " + std::to_string(d));
  }
  j_min_ = (d % 2 == 0) ? -d / 2 + 1 : -(d - 1) / 2;
  if (nbar + j_min_ < 1) {
    throw InvalidArgument("nbar=" + std::to_string(nbar) + " with d=" + std::to_string(d) +
                          " puts a level below n=1");
  }
}

std::vector<int> ManifoldSpec::j_range() const {
  std::vector<int> out(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) out[static_cast<std::size_t>(i)] = j_min_ + i;
  return out;
}

int ManifoldSpec::slot_of(int j) const {
  if (!contains(j)) {
    throw InvalidArgument("level index " + std::to_string(j) + " outside [" +
                          std::to_string(j_min()) + ", " + std::to_string(j_max()) + "]");
  }
  return j - j_min_;
}

int ManifoldSpec::slot_of_wrapped(int k) const noexcept {
  int s = (k - j_min_) % d_;
  return s < 0 ? s + d_ : s;
}

bool ManifoldSpec::kepler_regime_ok() const noexcept {
  return static_cast<double>(d_) * d_ < nbar_ / 4.0;
}

double exact_detuning(const ManifoldSpec& spec, int j) {
  spec.slot_of(j);
  const double n = spec.nbar();
  const double nj = n + j;
  return -0.5 / (nj * nj) + 0.5 / (n * n);
}

TimeScales time_scales(const ManifoldSpec& spec) {
  const double n = spec.nbar();
  TimeScales ts;
  ts.t_kepler = 2.0 * kPi * n * n * n;
  // T_rev/2! = 2 pi n^4 / 3 and T_sr/3! = pi n^5 / 6.
  ts.t_revival = 2.0 * (2.0 * kPi * n * n * n * n / 3.0);
  ts.t_superrevival = 6.0 * (kPi * n * n * n * n * n / 6.0);
  return ts;
}

double taylor_detuning(const ManifoldSpec& spec, int j, int order) {
  if (order < 1 || order > 3) {
    throw InvalidArgument("Taylor order must be 1, 2 or 3, got " + std::to_string(order));
  }
  spec.slot_of(j);
  const TimeScales ts = time_scales(spec);
  const double jj = j;
  double sum = jj / ts.t_kepler;
  if (order >= 2) sum -= jj * jj / ts.t_revival;
  if (order >= 3) sum += jj * jj * jj / ts.t_superrevival;
  return 2.0 * kPi * sum;
}

double detuning(const ManifoldSpec& spec, int j, SpectrumMode mode) {
  switch (mode) {
    case SpectrumMode::exact:
      return exact_detuning(spec, j);
    case SpectrumMode::taylor1:
      return taylor_detuning(spec, j, 1);
    case SpectrumMode::taylor2:
      return taylor_detuning(spec, j, 2);
    case SpectrumMode::taylor3:
      return taylor_detuning(spec, j, 3);
  }
  return exact_detuning(spec, j);
}

std::vector<double> detunings(const ManifoldSpec& spec, SpectrumMode mode) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.d()));
  for (int j : spec.j_range()) out.push_back(detuning(spec, j, mode));
  return out;
}

}  // namespace rydqudit
