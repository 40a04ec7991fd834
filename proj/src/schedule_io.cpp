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

#include "rydqudit/schedule_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rydqudit/error.hpp"
#include "rydqudit/units.hpp"

namespace rydqudit {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "rydqudit-schedule";

void allow_keys(const json& obj, const std::string& path, std::set<std::string> keys) {
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

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

Complex complex_entry(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(path, "expected [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

std::string schedule_to_json(const GateSchedule& schedule, int indent) {
  const ManifoldSpec spec = schedule.manifold();
  const double tk = time_scales(spec).t_kepler;
  json ops = json::array();
  for (const auto& op : schedule.ops) {
    json o;
    o["type"] = std::string(primitive_name(op));
    if (const auto* w = std::get_if<Wait>(&op)) {
      o["duration_au"] = w->duration;
      o["duration_ns"] = units::au_to_ns(w->duration);
      o["duration_kepler"] = w->duration / tk;
    } else if (const auto* p = std::get_if<ManifoldPulse>(&op)) {
      o["k"] = p->k;
      o["storage"] = std::string(to_string(p->storage));
      o["area"] = p->area;
      o["phase"] = p->phase;
      o["tau_p_au"] = p->tau_p;
      o["tau_p_ps"] = units::au_to_ns(p->tau_p) * 1e3;
      o["detuning_au"] = p->detuning;
      o["duration_ns"] = units::au_to_ns(p->duration());
    } else {
      const auto& s = std::get<StoragePulse>(op);
      o["theta"] = s.theta;
      o["phi"] = s.phi;
      o["detuning_au"] = s.detuning;
      o["duration_au"] = s.duration;
      o["duration_ns"] = units::au_to_ns(s.duration);
    }
    ops.push_back(std::move(o));
  }
  json doc;
  doc["format"] = kFormat;
  doc["version"] = 1;
  doc["nbar"] = schedule.nbar;
  doc["d"] = schedule.d;
  doc["global_phase"] = schedule.global_phase;
  const double total = schedule.total_duration();
  doc["total_duration_au"] = total;
  doc["total_duration_ns"] = units::au_to_ns(total);
  doc["total_duration_kepler"] = total / tk;
  doc["pulse_count"] = schedule.pulse_count();
  doc["ops"] = std::move(ops);
  return doc.dump(indent) + "\n";
}

GateSchedule schedule_from_json(const std::string& text) {
  const json doc = parse(text);
  const std::string root = "schedule";
  allow_keys(doc, root,
             {"format", "version", "nbar", "d", "global_phase", "total_duration_au",
              "total_duration_ns", "total_duration_kepler", "pulse_count", "ops"});
  const json& format = need(doc, root, "format");
  if (!format.is_string() || format.get<std::string>() != kFormat) {
    throw ConfigError(root + ".format", std::string("expected \"") + kFormat + "\"");
  }
  if (integer(doc, root, "version") != 1) throw ConfigError(root + ".version", "unsupported version");
  GateSchedule s;
  s.nbar = integer(doc, root, "nbar");
  s.d = integer(doc, root, "d");
  try {
    (void)ManifoldSpec(s.nbar, s.d);
  } catch (const InvalidArgument& e) {
    throw ConfigError(root + ".d", e.what());
  }
  if (doc.contains("global_phase")) s.global_phase = number(doc, root, "global_phase");
  const json& ops = need(doc, root, "ops");
  if (!ops.is_array()) throw ConfigError(root + ".ops", "expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const json& o = ops[i];
    const std::string path = root + ".ops[" + std::to_string(i) + "]";
    if (!o.is_object()) throw ConfigError(path, "expected an object");
    const json& type = need(o, path, "type");
    if (!type.is_string()) throw ConfigError(path + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "wait") {
      allow_keys(o, path, {"type", "duration_au", "duration_ns", "duration_kepler"});
      const double dt = number(o, path, "duration_au");
      if (!(dt >= 0.0)) throw ConfigError(path + ".duration_au", "must be >= 0");
      s.ops.push_back(Wait{dt});
    } else if (t == "manifold_pulse") {
      allow_keys(o, path, {"type", "k", "storage", "area", "phase", "tau_p_au", "tau_p_ps",
                           "detuning_au", "duration_ns"});
      ManifoldPulse p;
      p.k = integer(o, path, "k");
      const json& st = need(o, path, "storage");
      if (!st.is_string()) throw ConfigError(path + ".storage", "expected \"g\" or \"e\"");
      try {
        p.storage = storage_level_from_string(st.get<std::string>());
      } catch (const InvalidArgument& e) {
        throw ConfigError(path + ".storage", e.what());
      }
      p.area = number(o, path, "area");
      p.phase = number(o, path, "phase");
      p.tau_p = number(o, path, "tau_p_au");
      if (!(p.tau_p > 0.0)) throw ConfigError(path + ".tau_p_au", "must be > 0");
      p.detuning = o.contains("detuning_au") ? number(o, path, "detuning_au") : 0.0;
      s.ops.push_back(p);
    } else if (t == "storage_pulse") {
      allow_keys(o, path, {"type", "theta", "phi", "detuning_au", "duration_au", "duration_ns"});
      StoragePulse p;
      p.theta = number(o, path, "theta");
      p.phi = number(o, path, "phi");
      p.detuning = o.contains("detuning_au") ? number(o, path, "detuning_au") : 0.0;
      p.duration = o.contains("duration_au") ? number(o, path, "duration_au") : 0.0;
      if (!(p.duration >= 0.0)) throw ConfigError(path + ".duration_au", "must be >= 0");
      s.ops.push_back(p);
    } else {
      throw ConfigError(path + ".type", "unknown primitive '" + t + "'");
    }
  }
  return s;
}

UnitaryFile unitary_from_json(const std::string& text) {
  const json doc = parse(text);
  const std::string root = "unitary";
  allow_keys(doc, root, {"dimension", "entries", "nbar", "comment"});
  const int d = integer(doc, root, "dimension");
  if (d < 2) throw ConfigError(root + ".dimension", "must be >= 2");
  const json& rows = need(doc, root, "entries");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d)) {
    throw ConfigError(root + ".entries", "expected " + std::to_string(d) + " rows");
  }
  UnitaryFile f;
  f.u.resize(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    const std::string rp = root + ".entries[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      throw ConfigError(rp, "expected " + std::to_string(d) + " entries");
    }
    for (int c = 0; c < d; ++c) {
      f.u(r, c) = complex_entry(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
    }
  }
  if (!is_unitary(f.u, 1e-8)) throw ConfigError(root + ".entries", "matrix is not unitary to 1e-8");
  if (doc.contains("nbar")) f.nbar = integer(doc, root, "nbar");
  return f;
}

std::string unitary_to_json(const CMatrix& u, std::optional<int> nbar) {
  json doc;
  doc["dimension"] = u.rows();
  json rows = json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  if (nbar) doc["nbar"] = *nbar;
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace rydqudit
