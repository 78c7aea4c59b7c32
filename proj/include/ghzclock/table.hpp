// Copyright 2026 The ghzclock Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Plot-ready CSV tables and JSON metadata sidecars.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ghzclock {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws InvalidArgument if the row width differs from the header.
    void add_row(std::vector<Cell> row);
};

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
[[nodiscard]] std::string format_double(double value);

/// Header line plus one line per row, each newline-terminated. Strings with
/// commas, quotes or newlines are quoted.
[[nodiscard]] std::string format_csv(const Table &table);

/// Writes format_csv(table). I/O failures raise ErrorCode::Io with the OS message.
void write_table(const Table &table, const std::filesystem::path &path);

void write_metadata(const nlohmann::json &metadata, const std::filesystem::path &path);

struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string &name) const;
    [[nodiscard]] double number(std::size_t row, const std::string &name) const;
};

[[nodiscard]] CsvData read_csv(const std::filesystem::path &path);

} // namespace ghzclock
