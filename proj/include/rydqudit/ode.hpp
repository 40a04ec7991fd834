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

#include <cstddef>
#include <functional>
#include <limits>

#include "rydqudit/basis.hpp"

namespace rydqudit {

/// dy/dt written into `dydt` (pre-sized like y).
using OdeRhs = std::function<void(double t, const CVector& y, CVector& dydt)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  /// 0 picks a starting step automatically.
  double initial_step = 0.0;
  std::size_t max_steps = 50'000'000;
  /// Take uniform steps no longer than max_step with no error control.
  bool fixed_step = false;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  double last_step = 0.0;
};

/// Dormand-Prince 5(4) with FSAL and local extrapolation. Advances y from t0
/// to t1 (t1 >= t0). Throws IntegrationError on step-size underflow, on a
/// non-finite state and when max_steps is exhausted.
OdeStats integrate_dopri5(const OdeRhs& rhs, double t0, double t1, CVector& y,
                          const OdeOptions& options = {});

}  // namespace rydqudit
