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

#include <set>

#include "rydqudit/error.hpp"
#include "rydqudit/scenario_config.hpp"
#include "rydqudit/scenarios.hpp"

using namespace rydqudit;

namespace {

const char* kDark = R"({
  "name": "dark",
  "manifold": {"nbar": 180, "d": 8},
  "initial_state": {"kind": "uniform_packets", "time": "-1 slot"},
  "events": [
    {"type": "pulse", "center": "0 au", "tau_p": "0.34657359027997264 slot",
     "area": 3.141592653589793, "phase": 0.0, "storage": "g"}
  ],
  "outputs": {"trace_grid": {"start": "-1 slot", "stop": "1 slot", "step": "0.1 slot"},
              "snapshots": ["0 au"]},
  "checks": [{"observable": "pop_g", "min": 0.1125, "max": 1.0}]
})";

std::string with(std::string base, const std::string& from, const std::string& to) {
  base.replace(base.find(from), from.size(), to);
  return base;
}

}  // namespace

TEST_CASE("registry covers each criterion once") {
  const auto& reg = scenario_registry();
  CHECK(reg.size() == 11);
  std::set<int> criteria;
  for (const auto& s : reg) {
    criteria.insert(s.criterion);
    CHECK_FALSE(s.description.empty());
    CHECK(describe_scenario(s.name).find(s.name) != std::string::npos);
  }
  CHECK(criteria.size() == 11);
  CHECK(*criteria.begin() == 1);
  CHECK(*criteria.rbegin() == 11);
  CHECK(list_scenarios().size() == 11);
  CHECK_THROWS_AS(find_scenario("nope"), NotFound);
}

TEST_CASE("built-in scenarios are deterministic") {
  const auto a = run_builtin("qft_roundtrip");
  const auto b = run_builtin("qft_roundtrip", {4});
  CHECK(a.summary_json() == b.summary_json());
  CHECK(a.passed());
  CHECK(a.summary_line().rfind("PASS qft_roundtrip:", 0) == 0);
}

TEST_CASE("result bookkeeping") {
  ScenarioResult r;
  r.name = "x";
  r.observe("v", 2.0);
  CHECK(r.observable("v") == 2.0);
  CHECK_THROWS_AS(r.observable("w"), NotFound);
  r.check("ok", 1.0, 0.0, 2.0);
  CHECK(r.passed());
  r.check("bad", 3.0, 0.0, 2.0);
  CHECK_FALSE(r.passed());
  CHECK(r.summary_line().rfind("FAIL x:", 0) == 0);
}

TEST_CASE("config run reproduces the dark packet") {
  const ScenarioConfig c = parse_scenario_config(kDark);
  CHECK(c.nbar == 180);
  CHECK(c.events.size() == 1);
  const ScenarioResult r = run_scenario(c);
  CHECK(r.passed());
  CHECK(r.trace.rows.size() == 21);
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].first == "snapshots");
  CHECK(r.observable("norm_error") < 1e-9);
  const ScenarioResult again = run_scenario(parse_scenario_config(kDark));
  CHECK(again.summary_json() == r.summary_json());
  // Agrees with the built-in scenario.
  const auto builtin = run_builtin("dark_packet");
  CHECK(r.observable("pop_g") * 8 == doctest::Approx(builtin.observable("pop_g_times_d")).epsilon(1e-9));
}

TEST_CASE("config ideal and full gate events") {
  const std::string gate = R"({
    "manifold": {"nbar": 180, "d": 4},
    "seed": 3,
    "initial_state": {"kind": "packet", "k": 0},
    "events": [{"type": "gate", "unitary": {"haar": true}}, {"type": "wait", "duration": "1 kepler"}],
    "outputs": {"observables": ["gate_fidelity"]}
  })";
  const auto full = run_scenario(parse_scenario_config(gate));
  CHECK(full.observable("gate[0].process_fidelity") > 0.9);
  CHECK(full.observable("gate[0].duration_kepler") > 0);
  const auto ideal = run_scenario(parse_scenario_config(
      with(gate, "\"seed\"", "\"pulse_model\": \"ideal\", \"spectrum\": \"taylor1\", \"seed\"")));
  CHECK(ideal.observable("gate[0].process_fidelity") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ideal.observable("norm_error") < 1e-10);
}

TEST_CASE("config errors name the offending field") {
  auto field_of = [](const std::string& text) {
    try {
      parse_scenario_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  CHECK(field_of("{") == "");
  CHECK(field_of(R"({"initial_state": {"kind": "uniform_packets"}})").find("manifold") != std::string::npos);
  CHECK(field_of(with(kDark, "\"name\"", "\"colour\": 1, \"name\"")).find("colour") != std::string::npos);
  CHECK(field_of(with(kDark, "\"0 au\", \"tau_p\"", "\"0 lightyears\", \"tau_p\"")).find("center") != std::string::npos);
  CHECK(field_of(with(kDark, "\"storage\": \"g\"", "\"storage\": \"q\"")).find("storage") != std::string::npos);
  CHECK(field_of(with(kDark, "\"phase\": 0.0, ", "")).find("phase") != std::string::npos);
  CHECK(field_of(with(kDark, "\"d\": 8", "\"d\": 1")).find("manifold") != std::string::npos);
  CHECK(field_of(with(kDark, "\"uniform_packets\"", "\"mystery\"")).find("initial_state") != std::string::npos);
}

TEST_CASE("gate events need a whole Kepler clock") {
  const std::string bad = R"({
    "manifold": {"nbar": 180, "d": 4},
    "initial_state": {"kind": "packet", "k": 0},
    "events": [{"type": "wait", "duration": "1 slot"}, {"type": "gate", "unitary": {"shift": 1}}]
  })";
  CHECK_THROWS_AS(run_scenario(parse_scenario_config(bad)), ConfigError);
}
