// Copyright 2026 The ecsim Authors
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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ecsim {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct Column {
    std::string name;
    std::vector<double> values;
    bool integral = false;  // printed without a fractional part
};

/// Ordered columns (the first is the x axis) plus a provenance block.
/// The "timestamp" metadata key is the only field that varies between
/// identical invocations.
struct SeriesRecord {
    std::vector<Column> columns;
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Throws std::invalid_argument if columns differ in length.
    void validate() const;
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
};

/// "# key: value" provenance lines, a header row, then one row per x.
void write_csv(std::ostream& os, const SeriesRecord& record);
void write_json(std::ostream& os, const SeriesRecord& record);

/// Static line plot of up to two y columns against the first column.
void write_svg(std::ostream& os, const SeriesRecord& record, const std::string& title,
               const std::vector<std::string>& y_columns);

/// Decimal with 15 significant digits; "nan" and "inf" spelled out.
std::string format_number(double value);

}  // namespace ecsim
