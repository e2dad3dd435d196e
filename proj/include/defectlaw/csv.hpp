#pragma once

// Minimal RFC 4180 style CSV support: comma separated, double-quoted fields
// with "" escapes, LF or CRLF line endings. Numbers are parsed and printed
// independently of the C locale.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace defectlaw::csv {

struct Row {
  std::size_t line = 0;  // 1-based physical line of the record start
  std::vector<std::string> fields;
};

// Throws DataError on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

// Reads the file, checks the header matches `expected_header` exactly, and
// returns the data rows. Blank lines are ignored.
std::vector<Row> read_table(const std::filesystem::path& path,
                            const std::vector<std::string>& expected_header);

std::string quote(std::string_view field);

std::int64_t parse_int(std::string_view text, std::size_t line, std::string_view column);
double parse_real(std::string_view text, std::size_t line, std::string_view column);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace defectlaw::csv
