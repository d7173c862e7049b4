#include "odebench/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "odebench/errors.hpp"

namespace odebench::csv {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view cell, int line) {
  cell = trim(cell);
  if (cell == "nan") return std::nan("");
  if (cell == "inf") return INFINITY;
  if (cell == "-inf") return -INFINITY;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw ParseError(line, "expected a real number, got '" + std::string(cell) + "'");
  }
  return value;
}

Table parse(std::string_view text) {
  Table table;
  int line_no = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (have_header) throw ParseError(line_no, "comment after header");
      table.comments.emplace_back(trim(line.substr(1)));
      continue;
    }
    auto cells = split(line);
    for (auto& c : cells) c = std::string(trim(c));
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(table.header.size()) +
                                    " columns, got " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw ParseError(line_no, "missing header line");
  return table;
}

std::string write(const Table& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  auto put_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  put_row(table.header);
  for (const auto& row : table.rows) put_row(row);
  return out;
}

ReferenceSeries parse_reference(std::string_view text, ReferenceKind kind) {
  const Table table = parse(text);
  if (table.header != std::vector<std::string>{"t", "value"}) {
    throw ParseError(static_cast<int>(table.comments.size()) + 1,
                     "reference header must be 't,value'");
  }
  ReferenceSeries series;
  series.kind = kind;
  const int first_row_line = static_cast<int>(table.comments.size()) + 2;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const int line = first_row_line + static_cast<int>(i);
    series.points.push_back({parse_real(table.rows[i][0], line),
                             parse_real(table.rows[i][1], line)});
  }
  series.validate();
  return series;
}

ReferenceSeries read_reference(const std::filesystem::path& path,
                               ReferenceKind kind) {
  return parse_reference(read_file(path), kind);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace odebench::csv
