#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polyra/training.hpp"

namespace polyra {

struct CsvOptions {
  enum class Header { Auto, Present, Absent };
  // Auto treats the first row as a header when any of its cells is not a number.
  Header header = Header::Auto;
  char delimiter = ',';
};

struct CsvTable {
  std::vector<std::string> columns;  // empty without a header
  Dataset data;
};

// Reads a numeric matrix. Blank lines are skipped. Errors name the 1-based
// line and column of the offending cell.
CsvTable read_csv(std::istream& in, const CsvOptions& options = {},
                  const std::string& source = "<input>");
CsvTable read_csv_file(const std::string& path, const CsvOptions& options = {});

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

void write_csv_row(std::ostream& out, const std::vector<double>& row, char delimiter = ',');
void write_csv_header(std::ostream& out, const std::vector<std::string>& names,
                      char delimiter = ',');

}  // namespace polyra
