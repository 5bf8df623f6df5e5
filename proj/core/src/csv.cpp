#include "wavecorr/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "wavecorr/errors.hpp"

namespace wavecorr {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter,
                                    std::size_t row) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"' && cell.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  if (quoted) {
    throw DataError("csv: unterminated quote in row " + std::to_string(row));
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

CsvTable read_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("csv: cannot open '" + path + "'");
  }
  CsvTable table;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    auto cells = split_line(line, delimiter, row);
    if (row == 1) {
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size()) {
        throw DataError("csv: ragged row " + std::to_string(row) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) {
    throw DataError("csv: '" + path + "' is empty");
  }
  return table;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw DataError("csv: cannot parse '" + cell + "' as a number at (row " +
                    std::to_string(row) + ", col " + std::to_string(col) + ")");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace wavecorr
