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

#include "rydqudit/scenario_config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include <json.hpp>

#include "rydqudit/error.hpp"
#include "rydqudit/evolution.hpp"
#include "rydqudit/schedule_io.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

using nlohmann::json;

namespace {

// ---- strict field access -----------------------------------------------------

void allow_keys(const json& obj, const std::string& path, const std::set<std::string>& keys) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!keys.count(key)) throw ConfigError(path + "." + key, "unknown field");
  }
}

const json& need(const json& obj, const std::string& path, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "missing field");
  return *it;
}

std::string text(const json& obj, const std::string& path, const std::string& key) {
  const json& v = need(obj, path, key);
  if (!v.is_string()) throw ConfigError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double number(const json& obj, const std::string& path, const std::string& key) {
  const json& v = need(obj, path, key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

int integer(const json& obj, const std::string& path, const std::string& key) {
  const json& v = need(obj, path, key);
  if (!v.is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
  return v.get<int>();
}

double time_field(const json& obj, const std::string& path, const std::string& key,
                  const ManifoldSpec& spec) {
  const std::string s = text(obj, path, key);
  try {
    return parse_time(s, &spec);
  } catch (const ConfigError& e) {
    throw ConfigError(path + "." + key, e.what());
  }
}

double frequency_field(const json& obj, const std::string& path, const std::string& key) {
  const std::string s = text(obj, path, key);
  try {
    return parse_angular_frequency(s);
  } catch (const ConfigError& e) {
    throw ConfigError(path + "." + key, e.what());
  }
}

template <typename F>
auto wrap_invalid(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

InitialStateConfig parse_initial(const json& j, const std::string& path, const ManifoldSpec& spec) {
  allow_keys(j, path, {"kind", "k", "j", "basis", "values", "time"});
  InitialStateConfig init;
  const std::string kind = text(j, path, "kind");
  if (kind == "uniform_packets") {
    init.kind = InitialStateConfig::Kind::uniform_packets;
  } else if (kind == "uniform_energy") {
    init.kind = InitialStateConfig::Kind::uniform_energy;
  } else if (kind == "packet") {
    init.kind = InitialStateConfig::Kind::packet;
    init.label = integer(j, path, "k");
    if (!spec.contains(init.label)) throw ConfigError(path + ".k", "label outside the manifold");
  } else if (kind == "energy") {
    init.kind = InitialStateConfig::Kind::energy;
    init.label = integer(j, path, "j");
    if (!spec.contains(init.label)) throw ConfigError(path + ".j", "label outside the manifold");
  } else if (kind == "amplitudes") {
    init.kind = InitialStateConfig::Kind::amplitudes;
    const std::string basis = text(j, path, "basis");
    if (basis == "packet") {
      init.basis = Basis::packet;
    } else if (basis == "energy") {
      init.basis = Basis::energy;
    } else {
      throw ConfigError(path + ".basis", "expected \"packet\" or \"energy\"");
    }
    const json& v = need(j, path, "values");
    if (!v.is_array() || v.size() != static_cast<std::size_t>(spec.d())) {
      throw ConfigError(path + ".values", "expected d = " + std::to_string(spec.d()) + " entries");
    }
    init.values.resize(spec.d());
    for (int i = 0; i < spec.d(); ++i) {
      const json& e = v[static_cast<std::size_t>(i)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ConfigError(path + ".values[" + std::to_string(i) + "]", "expected [re, im]");
      }
      init.values[i] = Complex(e[0].get<double>(), e[1].get<double>());
    }
    const double n = init.values.norm();
    if (!(n > 0.0)) throw ConfigError(path + ".values", "zero vector");
    init.values /= n;
  } else {
    throw ConfigError(path + ".kind", "unknown initial state '" + kind + "'");
  }
  if (j.contains("time")) init.time = time_field(j, path, "time", spec);
  return init;
}

CMatrix parse_gate_unitary(const json& j, const std::string& path, const ManifoldSpec& spec,
                           std::uint64_t seed, std::size_t event_index, std::string& source,
                           const std::string& base_dir) {
  allow_keys(j, path, {"shift", "entries", "haar", "file"});
  if (j.size() != 1) throw ConfigError(path, "give exactly one of shift, entries, haar, file");
  if (j.contains("shift")) {
    const int n = integer(j, path, "shift");
    source = "shift " + std::to_string(n);
    return shift_matrix(spec.d(), n);
  }
  if (j.contains("haar")) {
    const json& h = j.at("haar");
    if (!h.is_boolean() || !h.get<bool>()) throw ConfigError(path + ".haar", "expected true");
    std::mt19937_64 rng(seed + event_index);
    source = "haar seed " + std::to_string(seed + event_index);
    return haar_unitary(spec.d(), rng);
  }
  UnitaryFile f;
  if (j.contains("file")) {
    std::filesystem::path p = text(j, path, "file");
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    source = "file " + p.string();
    f = unitary_from_json(read_text_file(p.string()));
  } else {
    json wrapped;
    wrapped["dimension"] = spec.d();
    wrapped["entries"] = j.at("entries");
    source = "entries";
    f = unitary_from_json(wrapped.dump());
  }
  if (f.u.rows() != spec.d()) throw ConfigError(path, "unitary dimension differs from d");
  if (!is_unitary(f.u, 1e-10)) throw ConfigError(path, "matrix is not unitary to 1e-10");
  return f.u;
}

ScenarioEvent parse_event(const json& e, const std::string& path, const ManifoldSpec& spec,
                          std::uint64_t seed, std::size_t index, const std::string& base_dir) {
  if (!e.is_object()) throw ConfigError(path, "expected an object");
  const std::string type = text(e, path, "type");
  if (type == "wait") {
    allow_keys(e, path, {"type", "duration"});
    const double dt = time_field(e, path, "duration", spec);
    if (dt < 0.0) throw ConfigError(path + ".duration", "must be >= 0");
    return WaitEvent{dt};
  }
  if (type == "pulse") {
    allow_keys(e, path,
               {"type", "center", "tau_p", "area", "peak_rabi", "phase", "storage", "detuning"});
    PulseEvent p;
    p.pulse.center_time = time_field(e, path, "center", spec);
    p.pulse.tau_p = time_field(e, path, "tau_p", spec);
    if (!(p.pulse.tau_p > 0.0)) throw ConfigError(path + ".tau_p", "must be > 0");
    const bool has_area = e.contains("area"), has_peak = e.contains("peak_rabi");
    if (has_area == has_peak) throw ConfigError(path, "give exactly one of area, peak_rabi");
    if (has_area) p.area = number(e, path, "area");
    if (has_peak) p.pulse.peak_rabi = frequency_field(e, path, "peak_rabi");
    p.pulse.phase = number(e, path, "phase");
    p.pulse.target = wrap_invalid(path + ".storage", [&] {
      return storage_level_from_string(text(e, path, "storage"));
    });
    if (e.contains("detuning")) p.pulse.carrier_detuning = frequency_field(e, path, "detuning");
    return p;
  }
  if (type == "storage_pulse") {
    allow_keys(e, path, {"type", "theta", "phi", "duration", "detuning"});
    StorageEvent s;
    s.pulse.theta = number(e, path, "theta");
    s.pulse.phi = number(e, path, "phi");
    s.pulse.duration = time_field(e, path, "duration", spec);
    if (s.pulse.duration < 0.0) throw ConfigError(path + ".duration", "must be >= 0");
    if (e.contains("detuning")) s.pulse.detuning = frequency_field(e, path, "detuning");
    return s;
  }
  if (type == "gate") {
    allow_keys(e, path, {"type", "unitary", "tau_p", "strategy", "align_to_revival", "detuning"});
    GateEvent g;
    g.target = parse_gate_unitary(need(e, path, "unitary"), path + ".unitary", spec, seed, index,
                                  g.source, base_dir);
    if (e.contains("tau_p")) g.defaults.tau_p = time_field(e, path, "tau_p", spec);
    if (e.contains("strategy")) {
      g.defaults.strategy = wrap_invalid(path + ".strategy", [&] {
        return compile_strategy_from_string(text(e, path, "strategy"));
      });
    }
    if (e.contains("align_to_revival")) {
      const json& v = e.at("align_to_revival");
      if (!v.is_boolean()) throw ConfigError(path + ".align_to_revival", "expected a boolean");
      g.defaults.align_to_revival = v.get<bool>();
    }
    if (e.contains("detuning")) g.defaults.detuning = frequency_field(e, path, "detuning");
    return g;
  }
  throw ConfigError(path + ".type", "unknown event type '" + type + "'");
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& input, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  const std::string root = "config";
  allow_keys(doc, root,
             {"name", "description", "manifold", "spectrum", "pulse_model", "rabi_exponent",
              "initial_state", "events", "outputs", "checks", "seed"});
  ScenarioConfig c;
  if (doc.contains("name")) c.name = text(doc, root, "name");
  if (doc.contains("description")) c.description = text(doc, root, "description");
  const json& m = need(doc, root, "manifold");
  allow_keys(m, root + ".manifold", {"nbar", "d"});
  c.nbar = integer(m, root + ".manifold", "nbar");
  c.d = integer(m, root + ".manifold", "d");
  const ManifoldSpec spec =
      wrap_invalid(root + ".manifold", [&] { return ManifoldSpec(c.nbar, c.d); });
  if (doc.contains("spectrum")) {
    c.spectrum = wrap_invalid(root + ".spectrum", [&] {
      return spectrum_mode_from_string(text(doc, root, "spectrum"));
    });
  }
  if (doc.contains("pulse_model")) {
    c.model = wrap_invalid(root + ".pulse_model", [&] {
      return pulse_model_from_string(text(doc, root, "pulse_model"));
    });
  }
  if (doc.contains("rabi_exponent")) c.rabi_exponent = number(doc, root, "rabi_exponent");
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError(root + ".seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  c.initial = parse_initial(need(doc, root, "initial_state"), root + ".initial_state", spec);
  if (doc.contains("events")) {
    const json& ev = doc.at("events");
    if (!ev.is_array()) throw ConfigError(root + ".events", "expected an array");
    for (std::size_t i = 0; i < ev.size(); ++i) {
      c.events.push_back(parse_event(ev[i], root + ".events[" + std::to_string(i) + "]", spec,
                                     c.seed, i, base_dir));
    }
  }
  if (doc.contains("outputs")) {
    const std::string op = root + ".outputs";
    const json& o = doc.at("outputs");
    allow_keys(o, op, {"trace_grid", "snapshots", "observables"});
    if (o.contains("trace_grid")) {
      const std::string gp = op + ".trace_grid";
      const json& g = o.at("trace_grid");
      allow_keys(g, gp, {"start", "stop", "step"});
      TraceGrid grid{time_field(g, gp, "start", spec), time_field(g, gp, "stop", spec),
                     time_field(g, gp, "step", spec)};
      if (!(grid.stop >= grid.start)) throw ConfigError(gp + ".stop", "must be >= start");
      if (!(grid.step > 0.0)) throw ConfigError(gp + ".step", "must be > 0");
      if ((grid.stop - grid.start) / grid.step > 1e6) throw ConfigError(gp, "more than 1e6 samples");
      c.grid = grid;
    }
    if (o.contains("snapshots")) {
      const json& s = o.at("snapshots");
      if (!s.is_array()) throw ConfigError(op + ".snapshots", "expected an array");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string sp = op + ".snapshots[" + std::to_string(i) + "]";
        if (!s[i].is_string()) throw ConfigError(sp, "expected a unit-tagged time");
        try {
          c.snapshots.push_back(parse_time(s[i].get<std::string>(), &spec));
        } catch (const ConfigError& e) {
          throw ConfigError(sp, e.what());
        }
      }
    }
    if (o.contains("observables")) {
      const json& s = o.at("observables");
      if (!s.is_array()) throw ConfigError(op + ".observables", "expected an array");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string sp = op + ".observables[" + std::to_string(i) + "]";
        if (!s[i].is_string()) throw ConfigError(sp, "expected a string");
        const std::string name = s[i].get<std::string>();
        if (name == "gate_fidelity") {
          c.gate_fidelity = true;
        } else if (name != "populations" && name != "norm_error") {
          throw ConfigError(sp, "unknown observable '" + name + "'");
        }
      }
    }
  }
  if (doc.contains("checks")) {
    const json& cs = doc.at("checks");
    if (!cs.is_array()) throw ConfigError(root + ".checks", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cp = root + ".checks[" + std::to_string(i) + "]";
      allow_keys(cs[i], cp, {"observable", "min", "max"});
      CheckSpec ch{text(cs[i], cp, "observable"), number(cs[i], cp, "min"), number(cs[i], cp, "max")};
      c.checks.push_back(ch);
    }
  }
  return c;
}

// ---- engine --------------------------------------------------------------------

namespace {

struct Step {
  enum class Kind { free, pulse, storage } kind = Kind::free;
  double t0 = 0.0;
  double t1 = 0.0;
  PulseSpec pulse;
  double ideal_area = 0.0;  // signed rotation angle for the ideal model
  StoragePulse storage;
  std::size_t event = 0;
};

struct Sample {
  double t;
  bool snapshot;
};

class Recorder {
 public:
  Recorder(const ManifoldSpec& spec, const SimulationState& initial, SpectrumMode mode)
      : spec_(spec), initial_(initial), mode_(mode) {
    columns_ = {"t_au", "t_si_ns", "pop_g", "pop_e"};
    for (auto& c : packet_columns(spec)) columns_.push_back(std::move(c));
    columns_.push_back("autocorr");
    columns_.push_back("norm_error");
    trace.columns = columns_;
    snapshots.columns = columns_;
    norm0_ = initial.total_population();
  }

  void record(const SimulationState& s, bool snapshot) {
    std::vector<double> row{s.t, units::au_to_ns(s.t), std::norm(s.b_g), std::norm(s.b_e)};
    const AmplitudeVector bt = s.packets(mode_);
    for (int k = 0; k < spec_.d(); ++k) row.push_back(std::norm(bt[k]));
    const CVector ph = free_phases(spec_, s.t - initial_.t, mode_);
    Complex overlap = std::conj(initial_.b_g) * s.b_g + std::conj(initial_.b_e) * s.b_e;
    for (int j = 0; j < spec_.d(); ++j) {
      overlap += std::conj(initial_.b_energy[j]) * s.b_energy[j] * ph[j];
    }
    row.push_back(std::norm(overlap));
    row.push_back(s.total_population() - norm0_);
    (snapshot ? snapshots : trace).add_row(std::move(row));
  }

  TraceRecord trace;
  TraceRecord snapshots;

 private:
  ManifoldSpec spec_;
  SimulationState initial_;
  SpectrumMode mode_;
  std::vector<std::string> columns_;
  double norm0_ = 1.0;
};

SimulationState initial_state(const ScenarioConfig& c, const ManifoldSpec& spec) {
  const InitialStateConfig& i = c.initial;
  switch (i.kind) {
    case InitialStateConfig::Kind::uniform_packets:
      return SimulationState::from_packets(spec, uniform_packets(spec), i.time, c.spectrum);
    case InitialStateConfig::Kind::uniform_energy:
      return {spec, uniform_energy(spec).values(), i.time};
    case InitialStateConfig::Kind::packet:
      return SimulationState::from_packets(spec, packet_delta(spec, i.label), i.time, c.spectrum);
    case InitialStateConfig::Kind::energy:
      return {spec, energy_delta(spec, i.label).values(), i.time};
    case InitialStateConfig::Kind::amplitudes:
      if (i.basis == Basis::packet) {
        return SimulationState::from_packets(spec, AmplitudeVector(Basis::packet, i.values),
                                             i.time, c.spectrum);
      }
      return {spec, i.values, i.time};
  }
  throw InvalidArgument("unhandled initial state");
}

void apply_rotation(SimulationState& s, StorageLevel storage, double theta, double phi,
                    double centre, SpectrumMode mode) {
  AmplitudeVector bt = packet_amplitudes_at(s.spec, s.energy(), centre, mode);
  const int core = s.spec.slot_of_wrapped(0);
  Complex& st = storage == StorageLevel::g ? s.b_g : s.b_e;
  const Matrix2c r = pulse_rotation(theta, phi);
  const Complex x = st, y = bt.values()[core];
  st = r(0, 0) * x + r(0, 1) * y;
  bt.values()[core] = r(1, 0) * x + r(1, 1) * y;
  s.b_energy = energy_amplitudes_from_packets(s.spec, bt, centre, mode).values();
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& c, const RunOptions& options) {
  const ManifoldSpec spec = c.manifold();
  const double tk = time_scales(spec).t_kepler;
  const double per_ref =
      std::abs(rabi_profile(spec, 1.0, c.rabi_exponent).omega_tilde_k[spec.slot_of(0)]);
  ScenarioResult result;
  result.name = c.name;
  if (!c.description.empty()) result.note("description", c.description);

  SimulationState state = initial_state(c, spec);
  const SimulationState start = state;

  // Expand events into atomic steps on one clock.
  std::vector<Step> steps;
  double t = state.t;
  std::size_t gate_index = 0;
  for (std::size_t i = 0; i < c.events.size(); ++i) {
    const std::string path = "config.events[" + std::to_string(i) + "]";
    const ScenarioEvent& ev = c.events[i];
    if (const auto* w = std::get_if<WaitEvent>(&ev)) {
      steps.push_back({Step::Kind::free, t, t + w->duration, {}, 0.0, {}, i});
      t += w->duration;
    } else if (const auto* p = std::get_if<PulseEvent>(&ev)) {
      Step s;
      s.kind = Step::Kind::pulse;
      s.event = i;
      s.pulse = p->pulse;
      if (p->area) {
        s.ideal_area = *p->area;
        s.pulse.peak_rabi = std::abs(*p->area) / (per_ref * envelope_area(s.pulse.tau_p));
        if (*p->area < 0.0) s.pulse.phase += units::kPi;
      } else {
        s.ideal_area = std::abs(s.pulse.peak_rabi) * per_ref * envelope_area(s.pulse.tau_p);
      }
      if (s.pulse.start() < t - 1e-9 * tk) {
        throw ConfigError(path + ".center", "pulse support starts before the previous event ends");
      }
      if (s.pulse.start() > t) steps.push_back({Step::Kind::free, t, s.pulse.start(), {}, 0.0, {}, i});
      s.t0 = std::max(t, s.pulse.start());
      s.t1 = s.pulse.end();
      steps.push_back(s);
      t = s.t1;
    } else if (const auto* sp = std::get_if<StorageEvent>(&ev)) {
      Step s;
      s.kind = Step::Kind::storage;
      s.event = i;
      s.storage = sp->pulse;
      s.t0 = t;
      s.t1 = t + sp->pulse.duration;
      steps.push_back(s);
      t = s.t1;
    } else {
      const auto& g = std::get<GateEvent>(ev);
      const double periods = t / tk;
      if (std::abs(periods - std::round(periods)) > 1e-9) {
        throw ConfigError(path, "gates must start at a whole number of Kepler periods");
      }
      GateSchedule sched;
      try {
        sched = compile_unitary(g.target, spec, g.defaults);
      } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
      }
      const std::string key = "gate[" + std::to_string(gate_index++) + "]";
      result.observe(key + ".duration_kepler", sched.total_kepler_periods());
      result.observe(key + ".pulses", double(sched.pulse_count()));
      result.note(key + ".target", g.source);
      if (c.gate_fidelity) {
        SimulationOptions so;
        so.model = c.model;
        so.mode = c.spectrum;
        so.rabi_exponent = c.rabi_exponent;
        result.observe(key + ".process_fidelity",
                       process_fidelity(sched, g.target, so, options.threads));
      }
      for (const auto& op : sched.ops) {
        const double dur = duration_of(op);
        if (std::holds_alternative<Wait>(op)) {
          steps.push_back({Step::Kind::free, t, t + dur, {}, 0.0, {}, i});
        } else if (const auto* mp = std::get_if<ManifoldPulse>(&op)) {
          Step s;
          s.kind = Step::Kind::pulse;
          s.event = i;
          s.t0 = t;
          s.t1 = t + dur;
          s.ideal_area = mp->area;
          s.pulse.tau_p = mp->tau_p;
          s.pulse.carrier_detuning = mp->detuning;
          s.pulse.center_time = t + dur / 2.0;
          s.pulse.target = mp->storage;
          s.pulse.phase = mp->area < 0.0 ? mp->phase + units::kPi : mp->phase;
          s.pulse.peak_rabi = std::abs(mp->area) / (per_ref * envelope_area(mp->tau_p));
          steps.push_back(s);
        } else {
          Step s;
          s.kind = Step::Kind::storage;
          s.event = i;
          s.storage = std::get<StoragePulse>(op);
          s.t0 = t;
          s.t1 = t + dur;
          steps.push_back(s);
        }
        t += dur;
      }
    }
  }

  // Sample times, ascending; snapshots and grid rows interleave.
  std::vector<Sample> samples;
  if (c.grid) {
    for (double ts : uniform_grid(c.grid->start, c.grid->stop, c.grid->step)) {
      samples.push_back({ts, false});
    }
  }
  for (double ts : c.snapshots) samples.push_back({ts, true});
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.t < b.t; });
  if (!samples.empty() && samples.front().t < start.t - 1e-9 * tk) {
    throw ConfigError("config.outputs", "sample time precedes the initial state time");
  }

  Recorder rec(spec, start, c.spectrum);
  std::size_t next = 0;
  auto free_sample = [&](const SimulationState& s, const Sample& smp) {
    SimulationState at = s;
    at.t = smp.t;
    rec.record(at, smp.snapshot);
  };

  for (const Step& s : steps) {
    try {
      if (s.kind == Step::Kind::free) {
        while (next < samples.size() && samples[next].t < s.t1) free_sample(state, samples[next++]);
        state.t = propagate_free(FreeState{state.energy(), state.t}, s.t1 - state.t).t;
      } else if (s.kind == Step::Kind::storage) {
        while (next < samples.size() && samples[next].t < s.t1) free_sample(state, samples[next++]);
        const Matrix2c m = storage_pulse_matrix(s.storage);
        const Complex g = state.b_g, e = state.b_e;
        state.b_g = m(0, 0) * g + m(0, 1) * e;
        state.b_e = m(1, 0) * g + m(1, 1) * e;
        state.t = s.t1;
      } else if (c.model == PulseModel::ideal) {
        const double centre = s.pulse.center_time;
        while (next < samples.size() && samples[next].t < centre) free_sample(state, samples[next++]);
        apply_rotation(state, s.pulse.target, s.ideal_area,
                       s.ideal_area < 0.0 ? s.pulse.phase - units::kPi : s.pulse.phase, centre,
                       c.spectrum);
        while (next < samples.size() && samples[next].t < s.t1) free_sample(state, samples[next++]);
        state.t = s.t1;
      } else {
        PulseOptions po;
        po.mode = c.spectrum;
        po.rabi_exponent = c.rabi_exponent;
        std::vector<bool> kinds;
        while (next < samples.size() && samples[next].t < s.t1) {
          po.sample_times.push_back(std::max(samples[next].t, s.pulse.start()));
          kinds.push_back(samples[next].snapshot);
          ++next;
        }
        std::size_t seen = 0;
        if (!kinds.empty()) {
          po.on_sample = [&](const SimulationState& at) { rec.record(at, kinds[seen++]); };
        }
        state.t = std::min(state.t, s.pulse.start());
        state = integrate_pulse(state, s.pulse, po).state;
      }
    } catch (const IntegrationError& e) {
      throw IntegrationError("event " + std::to_string(s.event) + ": " + e.what());
    }
  }
  while (next < samples.size()) free_sample(state, samples[next++]);

  result.trace = std::move(rec.trace);
  if (!rec.snapshots.empty()) result.tables.emplace_back("snapshots", std::move(rec.snapshots));

  result.observe("t_final_au", state.t);
  result.observe("t_final_ns", units::au_to_ns(state.t));
  result.observe("norm_error", std::abs(state.total_population() - start.total_population()));
  result.observe("pop_g", std::norm(state.b_g));
  result.observe("pop_e", std::norm(state.b_e));
  const AmplitudeVector bt = state.packets(c.spectrum);
  for (int k = 0; k < spec.d(); ++k) {
    result.observe("packet_pop[k=" + std::to_string(spec.label_at(k)) + "]", std::norm(bt[k]));
  }
  for (int j = 0; j < spec.d(); ++j) {
    result.observe("energy_pop[j=" + std::to_string(spec.label_at(j)) + "]",
                   std::norm(state.b_energy[j]));
  }
  for (const auto& ch : c.checks) {
    double value = 0.0;
    try {
      value = result.observable(ch.observable);
    } catch (const NotFound&) {
      throw ConfigError("config.checks", "unknown observable '" + ch.observable + "'");
    }
    result.check(ch.observable, value, ch.min, ch.max);
  }
  return result;
}

}  // namespace rydqudit
