#include "alphatest/panel_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "alphatest/errors.hpp"

namespace alphatest {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

CsvMatrix parse_csv_matrix(std::string_view text, std::string_view source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  const std::string where(source);
  if (lines.empty()) throw ParseError(where + ": empty file");

  CsvMatrix out;
  for (std::string_view h : split(lines.front())) out.header.emplace_back(h);
  const auto cols = static_cast<Eigen::Index>(out.header.size());
  const auto rows = static_cast<Eigen::Index>(lines.size() - 1);
  if (rows == 0) throw ParseError(where + ": no data rows");
  out.values.resize(rows, cols);

  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto cells = split(lines[static_cast<std::size_t>(r) + 1]);
    const std::string row_name = where + ": data row " + std::to_string(r + 1);
    if (static_cast<Eigen::Index>(cells.size()) != cols) {
      throw ParseError(row_name + " has " + std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::string_view cell = cells[static_cast<std::size_t>(c)];
      const std::string cell_name =
          row_name + ", column '" + out.header[static_cast<std::size_t>(c)] + "'";
      if (cell.empty()) throw ParseError(cell_name + " is empty");
      if (cell.front() == '+') cell.remove_prefix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw ParseError(cell_name + " is not a finite number: '" +
                         std::string(cells[static_cast<std::size_t>(c)]) + "'");
      }
      out.values(r, c) = v;
    }
  }
  return out;
}

CsvMatrix read_csv_matrix(const std::filesystem::path& path) {
  return parse_csv_matrix(read_text(path), path.string());
}

FactorPanel load_panel(const std::filesystem::path& returns_path,
                       const std::filesystem::path& factors_path) {
  const CsvMatrix returns = read_csv_matrix(returns_path);
  const CsvMatrix factors = read_csv_matrix(factors_path);
  const auto t = returns.values.rows();
  const auto p = factors.values.cols();
  if (factors.values.rows() != t) {
    throw ShapeMismatch("returns have " + std::to_string(t) + " rows but factors have " +
                        std::to_string(factors.values.rows()));
  }
  if (t <= p + 5) {
    throw TooFewObservations("need T > p + 5 observations, got T=" + std::to_string(t) +
                             " with p=" + std::to_string(p));
  }
  return FactorPanel(returns.values.transpose(), factors.values);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Matrix& values, const std::vector<std::string>& header) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) out += ',';
      out += format_number(values(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string returns_csv(const FactorPanel& panel) {
  std::vector<std::string> header;
  for (std::size_t i = 0; i < panel.securities(); ++i) header.push_back("s" + std::to_string(i + 1));
  return to_csv(panel.returns().transpose(), header);
}

std::string factors_csv(const FactorPanel& panel, const std::vector<std::string>& names) {
  std::vector<std::string> header = names;
  if (header.empty()) {
    for (std::size_t k = 0; k < panel.factor_count(); ++k) header.push_back("f" + std::to_string(k + 1));
  }
  if (header.size() != panel.factor_count()) {
    throw DimensionError("factors_csv: header size does not match factor count");
  }
  return to_csv(panel.factors(), header);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InputError("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace alphatest
