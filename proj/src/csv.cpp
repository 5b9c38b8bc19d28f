// Copyright 2026 The vqcshield Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "vqcshield/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "vqcshield/error.hpp"

namespace vqcshield {

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw DataError("refusing to format a non-finite value");
    }
    if (v == 0.0) {
        v = 0.0; // drop the sign of -0
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw DataError(source + ": missing column '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string &cell = rows.at(row).at(col);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw DataError(source + ": row " + std::to_string(row + 2) + ", column " +
                        std::to_string(col + 1) + " ('" + header.at(col) +
                        "'): not a finite number: '" + cell + "'");
    }
    return v;
}

namespace {

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

} // namespace

CsvTable read_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError(path.string() + ": cannot open");
    }
    CsvTable t;
    t.source = path.string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw DataError(t.source + ": row " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " columns, header has " +
                            std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    if (t.header.empty()) {
        throw DataError(t.source + ": empty file");
    }
    if (t.rows.empty()) {
        throw DataError(t.source + ": no data rows");
    }
    return t;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        cell(header[i]);
    }
    end_row();
}

CsvWriter &CsvWriter::cell(std::string_view text) {
    if (filled_ > 0) {
        out_.push_back(',');
    }
    out_.append(text);
    ++filled_;
    return *this;
}

CsvWriter &CsvWriter::cell(double v) { return cell(std::string_view(format_double(v))); }

CsvWriter &CsvWriter::cell(std::size_t v) { return cell(std::string_view(std::to_string(v))); }

void CsvWriter::end_row() {
    if (filled_ != width_) {
        throw DimensionError("csv row has " + std::to_string(filled_) + " cells, expected " +
                             std::to_string(width_));
    }
    out_.push_back('\n');
    filled_ = 0;
}

void write_file(const std::filesystem::path &path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(path.string() + ": cannot open for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(path.string() + ": write failed");
    }
}

} // namespace vqcshield
