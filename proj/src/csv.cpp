#include "polyra/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "polyra/error.hpp"

namespace polyra {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delimiter)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
  return v;
}

}  // namespace

CsvTable read_csv(std::istream& in, const CsvOptions& options, const std::string& source) {
  std::vector<std::string> columns;
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool first = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, options.delimiter);
    if (first) {
      first = false;
      bool header = options.header == CsvOptions::Header::Present;
      if (options.header == CsvOptions::Header::Auto)
        for (const auto& c : cells) header = header || !parse_number(c);
      width = cells.size();
      if (header) {
        columns = cells;
        continue;
      }
    }
    if (cells.size() != width)
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(width));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = parse_number(cells[c]);
      if (!v || !std::isfinite(*v))
        throw DataError(source + ": line " + std::to_string(line_no) + ", column " +
                        std::to_string(c + 1) + ": '" + cells[c] + "' is not a finite number");
      values.push_back(*v);
    }
  }
  if (values.empty()) throw DataError(source + ": no data rows");
  return {std::move(columns), Dataset(std::move(values), width)};
}

CsvTable read_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in, options, path);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, const std::vector<double>& row, char delimiter) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << delimiter;
    out << format_double(row[i]);
  }
  out << '\n';
}

void write_csv_header(std::ostream& out, const std::vector<std::string>& names, char delimiter) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << delimiter;
    out << names[i];
  }
  out << '\n';
}

}  // namespace polyra
