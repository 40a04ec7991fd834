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

#include <string>
#include <vector>

#include "rydqudit/manifold.hpp"

namespace rydqudit {

/// Column-oriented time series. Every row has one value per column.
struct TraceRecord {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  bool empty() const noexcept { return rows.empty(); }
  /// Index of a named column; throws NotFound.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;

  /// Header line plus one line per row. Numbers use the shortest text that
  /// round-trips, so identical traces give identical bytes.
  std::string to_csv() const;
};

/// Packet-population column names "k=<label>" in slot order.
std::vector<std::string> packet_columns(const ManifoldSpec& spec);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace rydqudit
