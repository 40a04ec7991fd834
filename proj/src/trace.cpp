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

#include "rydqudit/trace.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "rydqudit/error.hpp"

namespace rydqudit {

void TraceRecord::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument("trace row has " + std::to_string(row.size()) + " values for " +
                          std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t TraceRecord::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw NotFound("trace has no column '" + name + "'");
}

std::vector<double> TraceRecord::column_values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string TraceRecord::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_double(r[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> packet_columns(const ManifoldSpec& spec) {
  std::vector<std::string> out;
  for (int k : spec.j_range()) out.push_back("k=" + std::to_string(k));
  return out;
}

}  // namespace rydqudit
