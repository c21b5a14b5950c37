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

#include "spacemimo/csv.hpp"
#include "spacemimo/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace spacemimo
{
    void CsvTable::add_row(std::vector<CsvValue> row)
    {
        if (row.size() != columns.size())
            throw InvariantError("CsvTable(" + schema + "): row has " + std::to_string(row.size()) +
                                 " cells, header has " + std::to_string(columns.size()));
        rows.push_back(std::move(row));
    }

    std::string format_double(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    namespace
    {
        struct CellWriter
        {
            std::string &out;
            void operator()(double v) const { out += format_double(v); }
            void operator()(std::int64_t v) const { out += std::to_string(v); }
            void operator()(const std::string &v) const { out += v; }
        };

        std::vector<std::string> split(std::string_view line)
        {
            std::vector<std::string> cells;
            std::size_t start = 0;
            while (true)
            {
                const auto pos = line.find(',', start);
                cells.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return cells;
        }
    } // namespace

    std::string to_csv_string(const CsvTable &table)
    {
        std::string out = "# schema=" + table.schema + "/1\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i)
        {
            if (i)
                out += ',';
            out += table.columns[i];
        }
        out += '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                if (i)
                    out += ',';
                std::visit(CellWriter{out}, row[i]);
            }
            out += '\n';
        }
        return out;
    }

    void emit_csv(const CsvTable &table, const std::filesystem::path &path)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("emit_csv: cannot open " + path.string());
        const std::string text = to_csv_string(table);
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!f)
            throw std::runtime_error("emit_csv: write failed for " + path.string());
    }

    CsvTable parse_csv_string(std::string_view text)
    {
        CsvTable table;
        std::size_t pos = 0;
        bool header_done = false;
        while (pos < text.size())
        {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            const std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            if (line.empty())
                continue;
            if (line.starts_with("# schema="))
            {
                auto name = line.substr(9);
                if (const auto slash = name.rfind('/'); slash != std::string_view::npos)
                    name = name.substr(0, slash);
                table.schema = std::string(name);
                continue;
            }
            if (!header_done)
            {
                table.columns = split(line);
                header_done = true;
                continue;
            }
            std::vector<CsvValue> row;
            for (auto &cell : split(line))
            {
                double v = 0.0;
                const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (res.ec == std::errc() && res.ptr == cell.data() + cell.size())
                    row.emplace_back(v);
                else
                    row.emplace_back(cell);
            }
            table.add_row(std::move(row));
        }
        return table;
    }

    CsvTable parse_csv(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("parse_csv: cannot open " + path.string());
        std::ostringstream ss;
        ss << f.rdbuf();
        return parse_csv_string(ss.str());
    }
} // namespace spacemimo
