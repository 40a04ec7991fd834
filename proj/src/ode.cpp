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

#include "rydqudit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rydqudit/error.hpp"

namespace rydqudit {

namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Fifth minus embedded fourth order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stages {
  CVector k1, k2, k3, k4, k5, k6, k7, tmp, y5;
  explicit Stages(Eigen::Index n)
      : k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n) {}
};

// One trial step from (t, y) with k1 = f(t, y) already filled. Leaves the
// fifth-order solution in st.y5 and f(t+h, y5) in st.k7.
void trial_step(const OdeRhs& rhs, double t, double h, const CVector& y, Stages& st) {
  st.tmp = y + h * (a21 * st.k1);
  rhs(t + c2 * h, st.tmp, st.k2);
  st.tmp = y + h * (a31 * st.k1 + a32 * st.k2);
  rhs(t + c3 * h, st.tmp, st.k3);
  st.tmp = y + h * (a41 * st.k1 + a42 * st.k2 + a43 * st.k3);
  rhs(t + c4 * h, st.tmp, st.k4);
  st.tmp = y + h * (a51 * st.k1 + a52 * st.k2 + a53 * st.k3 + a54 * st.k4);
  rhs(t + c5 * h, st.tmp, st.k5);
  st.tmp = y + h * (a61 * st.k1 + a62 * st.k2 + a63 * st.k3 + a64 * st.k4 + a65 * st.k5);
  rhs(t + h, st.tmp, st.k6);
  st.y5 = y + h * (a71 * st.k1 + a73 * st.k3 + a74 * st.k4 + a75 * st.k5 + a76 * st.k6);
  rhs(t + h, st.y5, st.k7);
}

double error_norm(const CVector& y, const Stages& st, double h, const OdeOptions& o) {
  double sum = 0.0;
  const Eigen::Index n = y.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex err = h * (e1 * st.k1[i] + e3 * st.k3[i] + e4 * st.k4[i] + e5 * st.k5[i] +
                             e6 * st.k6[i] + e7 * st.k7[i]);
    const double scale = o.atol + o.rtol * std::max(std::abs(y[i]), std::abs(st.y5[i]));
    sum += std::norm(err) / (scale * scale);
  }
  return n > 0 ? std::sqrt(sum / double(n)) : 0.0;
}

bool finite(const CVector& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag())) return false;
  }
  return true;
}

}  // namespace

OdeStats integrate_dopri5(const OdeRhs& rhs, double t0, double t1, CVector& y,
                          const OdeOptions& options) {
  if (!(t1 >= t0)) throw InvalidArgument("integration interval must satisfy t1 >= t0");
  if (!(options.max_step > 0.0)) throw InvalidArgument("max_step must be positive");
  OdeStats stats;
  const double span = t1 - t0;
  if (span == 0.0) return stats;

  Stages st(y.size());
  rhs(t0, y, st.k1);
  ++stats.evaluations;

  if (options.fixed_step) {
    if (!std::isfinite(options.max_step)) throw InvalidArgument("fixed-step mode needs max_step");
    const auto n = static_cast<std::size_t>(std::ceil(span / options.max_step));
    if (n > options.max_steps) throw IntegrationError("fixed-step integration exceeds max_steps");
    const double h = span / double(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = t0 + double(i) * h;
      trial_step(rhs, t, h, y, st);
      stats.evaluations += 6;
      y = st.y5;
      st.k1 = st.k7;
      ++stats.accepted;
    }
    stats.last_step = h;
    if (!finite(y)) throw IntegrationError("non-finite state in fixed-step integration");
    return stats;
  }

  const double h_max = std::min(options.max_step, span);
  double h = options.initial_step;
  if (!(h > 0.0)) {
    // Starting guess from the scale of y and y'.
    double d0 = 0.0, d1 = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = options.atol + options.rtol * std::abs(y[i]);
      d0 += std::norm(y[i]) / (sc * sc);
      d1 += std::norm(st.k1[i]) / (sc * sc);
    }
    d0 = std::sqrt(d0 / std::max<double>(1, double(y.size())));
    d1 = std::sqrt(d1 / std::max<double>(1, double(y.size())));
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
  }
  h = std::min(h, h_max);

  double t = t0;
  const double h_min = 16.0 * std::numeric_limits<double>::epsilon() *
                       std::max({std::abs(t0), std::abs(t1), span});
  while (t < t1) {
    if (stats.accepted + stats.rejected >= options.max_steps) {
      throw IntegrationError("tolerance not met within " + std::to_string(options.max_steps) +
                             " steps");
    }
    bool last = false;
    if (t + h >= t1 || t1 - (t + h) < h_min) {
      h = t1 - t;
      last = true;
    }
    if (h < h_min) throw IntegrationError("step size underflow at t = " + std::to_string(t));
    trial_step(rhs, t, h, y, st);
    stats.evaluations += 6;
    const double err = error_norm(y, st, h, options);
    if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate at t = " + std::to_string(t));
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y = st.y5;
      st.k1 = st.k7;
      ++stats.accepted;
      stats.last_step = h;
      h = std::min(h * factor, h_max);
    } else {
      ++stats.rejected;
      h *= std::min(factor, 1.0);
    }
  }
  return stats;
}

}  // namespace rydqudit
