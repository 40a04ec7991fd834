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

#include <string_view>
#include <vector>

namespace rydqudit {

/// Which approximation of the level spacing drives free evolution.
/// `exact` is the hydrogenic -1/(2n^2) spectrum; `taylor1` keeps only the
/// Kepler term (evenly spaced levels), `taylor2` adds the revival term and
/// `taylor3` the super-revival term.
enum class SpectrumMode { exact, taylor1, taylor2, taylor3 };

std::string_view to_string(SpectrumMode mode);
SpectrumMode spectrum_mode_from_string(std::string_view name);

/// Characteristic free-evolution times of the manifold, atomic units.
struct TimeScales {
  double t_kepler = 0.0;
  double t_revival = 0.0;
  double t_superrevival = 0.0;
};

/// The d-level Rydberg manifold |nbar + j, l=1, m=0>.
///
/// Level labels j run over -d/2+1 .. d/2 for even d and -(d-1)/2 .. (d-1)/2
/// for odd d. Arrays indexed by level are stored in "slot" order: slot i holds
/// label j_min() + i. The wave packet labels k use the identical range.
class ManifoldSpec {
 public:
  /// Throws InvalidArgument when d < 2 or a level would have n < 1.
  ManifoldSpec(int nbar, int d);

  /// Degenerate one-level manifold. Only meaningful for checks against the
  /// closed-form two-level Rabi solution.
  static ManifoldSpec single_level(int nbar);

  int nbar() const noexcept { return nbar_; }
  int d() const noexcept { return d_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_min_ + d_ - 1; }

  /// Labels in slot order.
  std::vector<int> j_range() const;

  bool contains(int j) const noexcept { return j >= j_min() && j <= j_max(); }
  int label_at(int slot) const noexcept { return j_min_ + slot; }
  /// Slot of label j; throws InvalidArgument when j is outside the range.
  int slot_of(int j) const;
  /// Slot of packet label k reduced modulo d into the label range.
  int slot_of_wrapped(int k) const noexcept;

  /// d^2 < nbar/4. Reported, never enforced.
  bool kepler_regime_ok() const noexcept;

  bool operator==(const ManifoldSpec&) const = default;

 private:
  ManifoldSpec(int nbar, int d, bool allow_single);

  int nbar_;
  int d_;
  int j_min_;
};

/// omega_{j0} = -1/(2(nbar+j)^2) + 1/(2 nbar^2), hartree.
double exact_detuning(const ManifoldSpec& spec, int j);

TimeScales time_scales(const ManifoldSpec& spec);

/// Truncated series 2*pi [j/T_K - j^2/T_rev + j^3/T_sr] through `order` terms.
/// Throws InvalidArgument unless order is 1, 2 or 3.
double taylor_detuning(const ManifoldSpec& spec, int j, int order);

/// Detuning of level j under the chosen spectrum.
double detuning(const ManifoldSpec& spec, int j, SpectrumMode mode);

/// All detunings in slot order.
std::vector<double> detunings(const ManifoldSpec& spec, SpectrumMode mode);

}  // namespace rydqudit
