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
/**
 * @file csv.hpp
 * Minimal CSV reading and writing: header row, comma separator, '.'
 * decimals, '\n' line endings, shortest round-trip doubles.
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vqcshield {

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws DataError when the column is absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    /// Numeric cell; throws DataError naming the row and column on bad input.
    [[nodiscard]] double number(std::size_t row, std::size_t col) const;

    std::string source; // for diagnostics
};

/// Parses a CSV file. Throws DataError on a missing or empty file, or on a
/// row whose width differs from the header.
CsvTable read_csv(const std::filesystem::path &path);

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter &cell(std::string_view text);
    CsvWriter &cell(double v);
    CsvWriter &cell(std::size_t v);
    /// Throws DimensionError when the row is not header-width.
    void end_row();

    [[nodiscard]] const std::string &text() const noexcept { return out_; }

  private:
    std::size_t width_;
    std::size_t filled_ = 0;
    std::string out_;
};

/// Writes bytes verbatim (binary mode, no newline translation).
void write_file(const std::filesystem::path &path, std::string_view bytes);

} // namespace vqcshield
