// Copyright 2026 The wmnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

namespace wmnoise {

/// Column-labelled numeric table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

using Params = std::vector<std::pair<std::string, std::string>>;

/// %.17g formatting with a '.' decimal separator
/// regardless of the global locale.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

/// Shortest round-trip form, for labels.
inline std::string format_short(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// `# key=value` lines, the column header, then one row per line (LF).
inline void write_csv(std::ostream& out, const Params& params, const Table& table) {
  for (const auto& [key, value] : params) out << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_number(row[i]);
    }
    out << "\n";
  }
}

}  // namespace wmnoise
