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


#include <doctest.h>

#include <cmath>
#include <limits>

#include "rydqudit/error.hpp"
#include "rydqudit/ode.hpp"

using namespace rydqudit;

namespace {
// y' = i w y + coupling to a second component; exact solution is a rotation.
void rotor(double, const CVector& y, CVector& dy) {
  dy.resize(2);
  dy[0] = Complex(0, 1) * y[1];
  dy[1] = Complex(0, 1) * y[0];
}
}  // namespace

TEST_CASE("adaptive integration of a two-level rotation") {
  CVector y(2);
  y << 1.0, 0.0;
  const OdeStats s = integrate_dopri5(rotor, 0.0, 3.0, y);
  CHECK(std::abs(y[0] - std::cos(3.0)) < 1e-9);
  CHECK(std::abs(y[1] - Complex(0, std::sin(3.0))) < 1e-9);
  CHECK(std::abs(y.squaredNorm() - 1.0) < 1e-9);
  CHECK(s.accepted > 0);
  CHECK(s.evaluations >= 6 * s.accepted);
}

TEST_CASE("fixed-step mode is fifth order") {
  auto error_for = [](double h) {
    CVector y(1);
    y << 1.0;
    OdeOptions o;
    o.fixed_step = true;
    o.max_step = h;
    integrate_dopri5([](double t, const CVector& v, CVector& dv) {
      dv.resize(1);
      dv[0] = Complex(0, 1) * (1.0 + t) * v[0];
    }, 0.0, 2.0, y, o);
    return std::abs(y[0] - std::polar(1.0, 2.0 + 2.0));
  };
  const double e1 = error_for(0.1), e2 = error_for(0.05);
  CHECK(e1 / e2 == doctest::Approx(32.0).epsilon(0.15));
}

TEST_CASE("tighter tolerance lowers the error") {
  auto run = [](double rtol) {
    CVector y(2);
    y << 1.0, 0.0;
    OdeOptions o;
    o.rtol = rtol;
    o.atol = rtol * 1e-2;
    integrate_dopri5(rotor, 0.0, 20.0, y, o);
    return std::abs(y[0] - std::cos(20.0));
  };
  CHECK(run(1e-10) < run(1e-5));
}

TEST_CASE("max_step bounds the step size") {
  CVector y(2);
  y << 1.0, 0.0;
  OdeOptions o;
  o.max_step = 0.01;
  const OdeStats s = integrate_dopri5(rotor, 0.0, 1.0, y, o);
  CHECK(s.accepted >= 100);
}

TEST_CASE("integration failures raise IntegrationError") {
  CVector y(1);
  y << 1.0;
  OdeOptions o;
  o.max_steps = 5;
  o.max_step = 1e-3;
  CHECK_THROWS_AS(integrate_dopri5([](double, const CVector& v, CVector& dv) { dv = v; }, 0.0, 1.0, y, o),
                  IntegrationError);
  y << 1.0;
  CHECK_THROWS_AS(integrate_dopri5([](double, const CVector&, CVector& dv) {
                    dv.resize(1);
                    dv[0] = std::numeric_limits<double>::quiet_NaN();
                  }, 0.0, 1.0, y), IntegrationError);
}

TEST_CASE("zero-length interval is a no-op") {
  CVector y(2);
  y << 0.6, 0.8;
  integrate_dopri5(rotor, 1.0, 1.0, y);
  CHECK(y[0] == Complex(0.6));
}
