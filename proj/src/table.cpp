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

#include "ghzclock/table.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ghzclock/error.hpp"

namespace ghzclock {

namespace {

std::string quote_if_needed(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_cell(const Cell &cell) {
    if (const auto *i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto *d = std::get_if<double>(&cell)) return format_double(*d);
    return quote_if_needed(std::get<std::string>(cell));
}

void write_text(const std::string &text, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open " + path.string() + ": " + std::strerror(errno));
    }
    out << text;
    out.flush();
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + path.string() + ": " + std::strerror(errno));
    }
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
    require(row.size() == columns.size(), ErrorCode::InvalidArgument,
            "table row has " + std::to_string(row.size()) + " cells, header has " +
                std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

std::string format_csv(const Table &table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += quote_if_needed(table.columns[i]);
    }
    out += '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_table(const Table &table, const std::filesystem::path &path) {
    write_text(format_csv(table), path);
}

void write_metadata(const nlohmann::json &metadata, const std::filesystem::path &path) {
    write_text(metadata.dump(2) + "\n", path);
}

std::size_t CsvData::column(const std::string &name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    require(it != columns.end(), ErrorCode::InvalidArgument, "no column named " + name);
    return static_cast<std::size_t>(it - columns.begin());
}

double CsvData::number(std::size_t row, const std::string &name) const {
    const std::string &text = rows.at(row).at(column(name));
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    require(result.ec == std::errc{} && result.ptr == text.data() + text.size(),
            ErrorCode::InvalidArgument, "not a number: '" + text + "'");
    return value;
}

CsvData read_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string() + ": " + std::strerror(errno));
    }
    CsvData data;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        auto fields = split_csv_line(line);
        if (header) {
            data.columns = std::move(fields);
            header = false;
        } else {
            data.rows.push_back(std::move(fields));
        }
    }
    return data;
}

} // namespace ghzclock
