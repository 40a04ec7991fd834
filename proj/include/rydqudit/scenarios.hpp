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
#include <utility>
#include <vector>

#include "rydqudit/trace.hpp"

namespace rydqudit {

/// One machine-checkable pass/fail line: value must lie in [lo, hi].
struct Check {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool passed = false;
  std::string note;
};

struct ScenarioResult {
  std::string name;
  TraceRecord trace;
  std::vector<std::pair<std::string, TraceRecord>> tables;
  std::vector<std::pair<std::string, double>> observables;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<Check> checks;

  void observe(std::string key, double value);
  void note(std::string key, std::string text);
  const Check& check(std::string check_name, double value, double lo, double hi,
                     std::string why = {});
  double observable(const std::string& key) const;  ///< throws NotFound

  /// All checks passed (vacuously true without checks).
  bool passed() const;
  /// "PASS <name>: check=value in [lo, hi]; ..." on one line.
  std::string summary_line() const;
  /// Structured summary: observables, notes and checks.
  std::string summary_json() const;
};

struct RunOptions {
  /// Worker threads for embarrassingly parallel inner loops (1 = serial).
  unsigned threads = 1;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  /// Acceptance criterion this scenario decides (0 for none).
  int criterion = 0;
  std::function<ScenarioResult(const RunOptions&)> run;
};

/// Canonical scenarios in a fixed order.
const std::vector<ScenarioInfo>& scenario_registry();
std::vector<std::string> list_scenarios();
const ScenarioInfo& find_scenario(const std::string& name);  ///< throws NotFound
std::string describe_scenario(const std::string& name);       ///< throws NotFound
ScenarioResult run_builtin(const std::string& name, const RunOptions& options = {});

}  // namespace rydqudit
