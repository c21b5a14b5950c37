// SPDX-License-Identifier: Apache-2.0
//
// spacemimo: capacity analysis for long-range free-space MIMO links
// Copyright (C) 2026 The spacemimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spacemimo
{
    using CsvValue = std::variant<double, std::int64_t, std::string>;

    // A plot-ready table. The schema name is versioned in the first line of the file as
    // "# schema=<name>/1", followed by the header row.
    struct CsvTable
    {
        std::string schema;
        std::vector<std::string> columns;
        std::vector<std::vector<CsvValue>> rows;

        void add_row(std::vector<CsvValue> row); // throws InvariantError on width mismatch
    };

    // Shortest decimal string that parses back to the same double.
    std::string format_double(double v);

    std::string to_csv_string(const CsvTable &table);

    // UTF-8, LF line endings. Throws std::runtime_error on I/O failure.
    void emit_csv(const CsvTable &table, const std::filesystem::path &path);

    // Parses a file written by emit_csv. Numeric cells come back as double.
    CsvTable parse_csv(const std::filesystem::path &path);
    CsvTable parse_csv_string(std::string_view text);
} // namespace spacemimo
