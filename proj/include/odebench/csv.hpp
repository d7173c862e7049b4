#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "odebench/error_analysis.hpp"

namespace odebench::csv {

/// Comma-separated table with optional leading `#` comment lines. Cells are
/// unquoted; none of the tables written here contain commas in a cell.
struct Table {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest representation that round-trips the double, with at least 12
/// significant digits available. Non-finite values print as "nan"/"inf".
std::string format_real(double value);

/// Throws ParseError on ragged rows or a missing header.
Table parse(std::string_view text);
std::string write(const Table& table);

/// Reads a `t,value` reference file. Throws ParseError on format problems
/// and InvalidConfig when the series violates its invariants.
ReferenceSeries parse_reference(std::string_view text, ReferenceKind kind);
ReferenceSeries read_reference(const std::filesystem::path& path,
                               ReferenceKind kind);

double parse_real(std::string_view cell, int line);

std::string read_file(const std::filesystem::path& path);
/// Throws std::runtime_error when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace odebench::csv
