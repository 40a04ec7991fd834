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

#include "rydqudit/rydqudit.h"

#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydqudit/error.hpp"
#include "rydqudit/evolution.hpp"
#include "rydqudit/gates.hpp"
#include "rydqudit/scenario_config.hpp"
#include "rydqudit/scenarios.hpp"
#include "rydqudit/schedule_io.hpp"
#include "rydqudit/units.hpp"

struct rq_manifold {
  rydqudit::ManifoldSpec spec;
};

struct rq_result {
  rydqudit::ScenarioResult result;
  std::string summary_line;
  std::string summary_json;
  std::string trace_csv;
  std::vector<std::string> table_csv;
};

struct rq_schedule {
  rydqudit::GateSchedule schedule;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

rq_status fail(rq_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Maps the library exception hierarchy onto status codes.
template <typename F>
rq_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return RQ_OK;
  } catch (const rydqudit::ConfigError& e) {
    return fail(RQ_ERR_CONFIG, e.what());
  } catch (const rydqudit::NotFound& e) {
    return fail(RQ_ERR_NOT_FOUND, e.what());
  } catch (const rydqudit::IntegrationError& e) {
    return fail(RQ_ERR_INTEGRATION, e.what());
  } catch (const rydqudit::InvalidArgument& e) {
    return fail(RQ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RQ_ERR_INTERNAL, "unknown error");
  }
}

rq_result* wrap_result(rydqudit::ScenarioResult r) {
  auto* out = new rq_result{std::move(r), {}, {}, {}, {}};
  out->summary_line = out->result.summary_line();
  out->summary_json = out->result.summary_json();
  out->trace_csv = out->result.trace.to_csv();
  for (const auto& [name, table] : out->result.tables) out->table_csv.push_back(table.to_csv());
  return out;
}

nlohmann::json parse_options(const char* text) {
  if (text == nullptr || *text == '\0') return nlohmann::json::object();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw rydqudit::ConfigError("options", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw rydqudit::ConfigError("options", "expected an object");
  return j;
}

std::string option_string(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw rydqudit::ConfigError(std::string("options.") + key, "expected a string");
  return v.get<std::string>();
}

template <typename F>
auto as_config(const char* field, F&& f) {
  try {
    return f();
  } catch (const rydqudit::InvalidArgument& e) {
    throw rydqudit::ConfigError(std::string("options.") + field, e.what());
  }
}

}  // namespace

extern "C" {

const char* rq_version(void) { return "0.1.0"; }

const char* rq_last_error(void) { return g_last_error.c_str(); }

rq_status rq_manifold_create(int nbar, int d, rq_manifold** out) {
  if (out == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] { *out = new rq_manifold{rydqudit::ManifoldSpec(nbar, d)}; });
}

void rq_manifold_destroy(rq_manifold* m) { delete m; }

rq_status rq_manifold_time_scales(const rq_manifold* m, double* t_kepler, double* t_revival,
                                  double* t_superrevival) {
  if (m == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "manifold is NULL");
  const auto ts = rydqudit::time_scales(m->spec);
  if (t_kepler) *t_kepler = ts.t_kepler;
  if (t_revival) *t_revival = ts.t_revival;
  if (t_superrevival) *t_superrevival = ts.t_superrevival;
  g_last_error.clear();
  return RQ_OK;
}

rq_status rq_manifold_one_period_decay(const rq_manifold* m, double* out) {
  if (m == nullptr || out == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { *out = rydqudit::one_period_decay(m->spec); });
}

size_t rq_scenario_count(void) { return rydqudit::scenario_registry().size(); }

const char* rq_scenario_name(size_t index) {
  const auto& reg = rydqudit::scenario_registry();
  return index < reg.size() ? reg[index].name.c_str() : nullptr;
}

rq_status rq_scenario_describe(const char* name, const char** text) {
  if (name == nullptr || text == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    // Registry entries live for the program; their text is stable.
    static thread_local std::string buffer;
    buffer = rydqudit::describe_scenario(name);
    *text = buffer.c_str();
  });
}

rq_status rq_scenario_run_builtin(const char* name, unsigned threads, rq_result** out) {
  if (name == nullptr || out == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    rydqudit::RunOptions o;
    o.threads = threads == 0 ? 1 : threads;
    *out = wrap_result(rydqudit::run_builtin(name, o));
  });
}

rq_status rq_scenario_run_config(const char* json_text, const char* base_dir, unsigned threads,
                                 rq_result** out) {
  if (json_text == nullptr || out == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const auto cfg = rydqudit::parse_scenario_config(json_text, base_dir ? base_dir : ".");
    rydqudit::RunOptions o;
    o.threads = threads == 0 ? 1 : threads;
    *out = wrap_result(rydqudit::run_scenario(cfg, o));
  });
}

void rq_result_destroy(rq_result* r) { delete r; }

int rq_result_passed(const rq_result* r) { return r != nullptr && r->result.passed() ? 1 : 0; }

const char* rq_result_name(const rq_result* r) { return r ? r->result.name.c_str() : ""; }

const char* rq_result_summary_line(const rq_result* r) { return r ? r->summary_line.c_str() : ""; }

const char* rq_result_summary_json(const rq_result* r) { return r ? r->summary_json.c_str() : ""; }

const char* rq_result_trace_csv(const rq_result* r) { return r ? r->trace_csv.c_str() : ""; }

size_t rq_result_check_count(const rq_result* r) { return r ? r->result.checks.size() : 0; }

rq_status rq_result_check(const rq_result* r, size_t index, const char** name, double* value,
                          double* lo, double* hi, int* passed) {
  if (r == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "result is NULL");
  if (index >= r->result.checks.size()) return fail(RQ_ERR_NOT_FOUND, "check index out of range");
  const auto& c = r->result.checks[index];
  if (name) *name = c.name.c_str();
  if (value) *value = c.value;
  if (lo) *lo = c.lo;
  if (hi) *hi = c.hi;
  if (passed) *passed = c.passed ? 1 : 0;
  g_last_error.clear();
  return RQ_OK;
}

size_t rq_result_table_count(const rq_result* r) { return r ? r->result.tables.size() : 0; }

const char* rq_result_table_name(const rq_result* r, size_t index) {
  if (r == nullptr || index >= r->result.tables.size()) return nullptr;
  return r->result.tables[index].first.c_str();
}

const char* rq_result_table_csv(const rq_result* r, size_t index) {
  if (r == nullptr || index >= r->table_csv.size()) return nullptr;
  return r->table_csv[index].c_str();
}

rq_status rq_result_observable(const rq_result* r, const char* key, double* value) {
  if (r == nullptr || key == nullptr || value == nullptr) {
    return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] { *value = r->result.observable(key); });
}

rq_status rq_compile_unitary(const char* unitary_json, int nbar, const char* options_json,
                             rq_schedule** out) {
  if (unitary_json == nullptr || out == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const auto file = rydqudit::unitary_from_json(unitary_json);
    int n = nbar;
    if (n <= 0) {
      if (!file.nbar) throw rydqudit::ConfigError("unitary.nbar", "nbar not given");
      n = *file.nbar;
    }
    const rydqudit::ManifoldSpec spec = as_config("nbar", [&] {
      return rydqudit::ManifoldSpec(n, static_cast<int>(file.u.rows()));
    });
    if (!rydqudit::is_unitary(file.u, 1e-10)) {
      throw rydqudit::ConfigError("unitary.entries", "matrix is not unitary to 1e-10");
    }
    const auto opts = parse_options(options_json);
    rydqudit::GateDefaults defaults;
    for (const auto& [key, value] : opts.items()) {
      if (key == "strategy") {
        defaults.strategy = as_config("strategy", [&] {
          return rydqudit::compile_strategy_from_string(option_string(opts, "strategy"));
        });
      } else if (key == "tau_p") {
        defaults.tau_p = rydqudit::parse_time(option_string(opts, "tau_p"), &spec);
      } else if (key == "detuning") {
        defaults.detuning = rydqudit::parse_angular_frequency(option_string(opts, "detuning"));
      } else if (key == "align_to_revival") {
        if (!value.is_boolean()) throw rydqudit::ConfigError("options.align_to_revival", "expected a boolean");
        defaults.align_to_revival = value.get<bool>();
      } else {
        throw rydqudit::ConfigError("options." + key, "unknown option");
      }
    }
    auto sched = rydqudit::compile_unitary(file.u, spec, defaults);
    auto* s = new rq_schedule{std::move(sched), {}};
    s->json = rydqudit::schedule_to_json(s->schedule);
    *out = s;
  });
}

rq_status rq_schedule_from_json(const char* schedule_json, rq_schedule** out) {
  if (schedule_json == nullptr || out == nullptr) return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    auto sched = rydqudit::schedule_from_json(schedule_json);
    auto* s = new rq_schedule{std::move(sched), {}};
    s->json = rydqudit::schedule_to_json(s->schedule);
    *out = s;
  });
}

void rq_schedule_destroy(rq_schedule* s) { delete s; }

const char* rq_schedule_json(const rq_schedule* s) { return s ? s->json.c_str() : ""; }

double rq_schedule_duration_au(const rq_schedule* s) {
  return s ? s->schedule.total_duration() : 0.0;
}

size_t rq_schedule_pulse_count(const rq_schedule* s) { return s ? s->schedule.pulse_count() : 0; }

rq_status rq_verify(const rq_schedule* s, const char* unitary_json, const char* options_json,
                    double* fidelity) {
  if (s == nullptr || unitary_json == nullptr || fidelity == nullptr) {
    return fail(RQ_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const auto file = rydqudit::unitary_from_json(unitary_json);
    if (file.u.rows() != s->schedule.d) {
      throw rydqudit::ConfigError("unitary.dimension", "does not match the schedule's d");
    }
    if (file.nbar && *file.nbar != s->schedule.nbar) {
      throw rydqudit::ConfigError("unitary.nbar", "does not match the schedule's nbar");
    }
    const auto opts = parse_options(options_json);
    rydqudit::SimulationOptions so;
    unsigned threads = 0;
    for (const auto& [key, value] : opts.items()) {
      if (key == "model") {
        so.model = as_config("model", [&] {
          return rydqudit::pulse_model_from_string(option_string(opts, "model"));
        });
      } else if (key == "spectrum") {
        so.mode = as_config("spectrum", [&] {
          return rydqudit::spectrum_mode_from_string(option_string(opts, "spectrum"));
        });
      } else if (key == "threads") {
        if (!value.is_number_unsigned()) throw rydqudit::ConfigError("options.threads", "expected an integer");
        threads = value.get<unsigned>();
      } else {
        throw rydqudit::ConfigError("options." + key, "unknown option");
      }
    }
    *fidelity = rydqudit::process_fidelity(s->schedule, file.u, so, threads);
  });
}

}  // extern "C"
