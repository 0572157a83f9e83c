// Copyright 2026 The gapforge Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace gapforge {

// Shortest text that parses back to the same double.
std::string format_double(double value);
// Fixed number of decimals, for table-style columns.
std::string format_fixed(double value, int decimals);

using Cell = std::variant<std::uint64_t, std::int64_t, double, bool, std::string>;

// A named-column table emitted as CSV or JSON with identical values.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table& add(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

void write_csv(std::ostream& out, const Table& table);
nlohmann::ordered_json to_json(const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

}  // namespace gapforge
