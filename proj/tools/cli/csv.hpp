#ifndef DCOV_CLI_CSV_HPP
#define DCOV_CLI_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dcov/matrix.hpp"

namespace dcov::cli {

/// Numeric table with rows as samples and named columns.
struct Dataset {
  Matrix matrix;
  std::vector<std::string> column_names;
  bool rows_are_samples = true;
};

struct CsvOptions {
  bool has_header = true;
  /// Swap rows and columns after parsing, for files that store one variable
  /// per row. Transposed columns are named V1..Vp.
  bool transpose = false;
};

/// Comma-separated numeric table, optional header row, optional double quotes
/// around fields. Blank lines are skipped. Errors name the 1-based line and the
/// column.
Dataset parse_csv(std::string_view text, const CsvOptions& opts = {});
Dataset read_csv(const std::filesystem::path& path, const CsvOptions& opts = {});

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Writes header and rows as CSV; names are quoted only when needed.
void write_csv(std::ostream& os, const std::vector<std::string>& header, const Matrix& rows);

std::string csv_escape(std::string_view field);

}  // namespace dcov::cli

#endif  // DCOV_CLI_CSV_HPP
