#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "alphatest/matrix_core.hpp"
#include "alphatest/panel_ols.hpp"

namespace alphatest {

/// A numeric CSV table with one header row.
struct CsvMatrix {
  std::vector<std::string> header;
  Matrix values;  // data rows x columns
};

/// Throws ParseError naming the offending row and column (1-based data row,
/// header name) for missing, non-numeric or non-finite cells.
CsvMatrix parse_csv_matrix(std::string_view text, std::string_view source);
CsvMatrix read_csv_matrix(const std::filesystem::path& path);

/// Time-major files: returns have T rows and one column per security,
/// factors have T rows and one column per factor.
///
/// Throws ShapeMismatch if the row counts differ and TooFewObservations if
/// T <= p + 5.
FactorPanel load_panel(const std::filesystem::path& returns_path,
                       const std::filesystem::path& factors_path);

/// 17 significant digits, enough to reproduce every double exactly.
std::string format_number(double x);

std::string to_csv(const Matrix& values, const std::vector<std::string>& header);

/// Time-major CSV text of the returns (header s1..sN) and factors.
std::string returns_csv(const FactorPanel& panel);
std::string factors_csv(const FactorPanel& panel, const std::vector<std::string>& names = {});

/// Writes to a sibling temporary file and renames it into place, so readers
/// never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace alphatest
