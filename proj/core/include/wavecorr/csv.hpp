#pragma once

#include <string>
#include <vector>

namespace wavecorr {

/// Raw CSV contents: one header row plus data rows of string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a CSV file. Handles quoted cells ("" escapes a quote) and both LF and
/// CRLF line endings. Throws DataError with a row/column location on malformed
/// input, including ragged rows.
CsvTable read_csv(const std::string& path, char delimiter = ',');

/// Parses a cell as double. Throws DataError naming (row, column) on failure.
/// 1-based positions, matching the error messages of read_csv.
double parse_cell(const std::string& cell, std::size_t row, std::size_t col);

/// Formats a double with 12 significant digits ("%.12g"), the format used by
/// every CSV writer in the library. Deterministic for identical inputs.
std::string format_double(double value);

}  // namespace wavecorr
