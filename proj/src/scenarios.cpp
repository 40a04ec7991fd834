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

#include "rydqudit/scenarios.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "rydqudit/error.hpp"

namespace rydqudit {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void ScenarioResult::observe(std::string key, double value) {
  observables.emplace_back(std::move(key), value);
}

void ScenarioResult::note(std::string key, std::string text) {
  notes.emplace_back(std::move(key), std::move(text));
}

const Check& ScenarioResult::check(std::string check_name, double value, double lo, double hi,
                                   std::string why) {
  Check c;
  c.name = std::move(check_name);
  c.value = value;
  c.lo = lo;
  c.hi = hi;
  c.passed = std::isfinite(value) && value >= lo && value <= hi;
  c.note = std::move(why);
  checks.push_back(std::move(c));
  return checks.back();
}

double ScenarioResult::observable(const std::string& key) const {
  for (const auto& [k, v] : observables) {
    if (k == key) return v;
  }
  throw NotFound("no observable '" + key + "' in scenario " + name);
}

bool ScenarioResult::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ScenarioResult::summary_line() const {
  std::string line = passed() ? "PASS " : "FAIL ";
  line += name;
  if (checks.empty()) return line + ": no checks";
  line += ":";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    line += (i == 0 ? " " : "; ");
    line += c.name + "=" + short_number(c.value) + " in [" + short_number(c.lo) + ", " +
            short_number(c.hi) + "]";
    if (!c.passed) line += " (failed)";
  }
  return line;
}

std::string ScenarioResult::summary_json() const {
  nlohmann::ordered_json doc;
  doc["scenario"] = name;
  doc["passed"] = passed();
  nlohmann::ordered_json obs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : observables) obs[k] = finite_or_null(v);
  doc["observables"] = std::move(obs);
  nlohmann::ordered_json nt = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes) nt[k] = v;
  doc["notes"] = std::move(nt);
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["value"] = finite_or_null(c.value);
    j["lo"] = finite_or_null(c.lo);
    j["hi"] = finite_or_null(c.hi);
    j["passed"] = c.passed;
    if (!c.note.empty()) j["note"] = c.note;
    cs.push_back(std::move(j));
  }
  doc["checks"] = std::move(cs);
  nlohmann::ordered_json tb = nlohmann::ordered_json::array();
  for (const auto& [k, t] : tables) tb.push_back(k);
  doc["tables"] = std::move(tb);
  return doc.dump(2) + "\n";
}

std::vector<std::string> list_scenarios() {
  std::vector<std::string> names;
  for (const auto& s : scenario_registry()) names.push_back(s.name);
  return names;
}

const ScenarioInfo& find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry()) {
    if (s.name == name) return s;
  }
  throw NotFound("unknown scenario '" + name + "'");
}

std::string describe_scenario(const std::string& name) {
  const ScenarioInfo& s = find_scenario(name);
  std::string text = s.name + "\n";
  if (s.criterion > 0) text += "acceptance criterion: " + std::to_string(s.criterion) + "\n";
  return text + s.description + "\n";
}

ScenarioResult run_builtin(const std::string& name, const RunOptions& options) {
  ScenarioResult r = find_scenario(name).run(options);
  r.name = name;
  return r;
}

}  // namespace rydqudit
