#include "cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "dcov/error.hpp"

namespace dcov::cli {

namespace {

// Splits one record. line_no is only for diagnostics.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && !was_quoted && cur.find_first_not_of(" \t") == std::string::npos) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw InvalidInput("line " + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_cell(std::string_view raw, std::size_t line_no, const std::string& column) {
  std::string_view s = trim(raw);
  auto where = [&] { return "line " + std::to_string(line_no) + ", column '" + column + "'"; };
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput(where() + ": non-numeric value '" + std::string(raw) + "'");
  if (!std::isfinite(v)) throw InvalidInput(where() + ": non-finite value '" + std::string(raw) + "'");
  return v;
}

std::vector<std::string> default_names(std::size_t p) {
  std::vector<std::string> names(p);
  for (std::size_t j = 0; j < p; ++j) names[j] = "V" + std::to_string(j + 1);
  return names;
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& opts) {
  std::vector<std::string> names;
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  bool header_pending = opts.has_header;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    auto fields = split_record(line, line_no);
    if (header_pending) {
      header_pending = false;
      std::set<std::string> seen;
      for (auto& f : fields) {
        std::string name(trim(f));
        if (!seen.insert(name).second)
          throw InvalidInput("line " + std::to_string(line_no) + ": duplicate column name '" + name + "'");
        names.push_back(std::move(name));
      }
      cols = names.size();
      continue;
    }
    if (cols == 0) {
      cols = fields.size();
      names = default_names(cols);
    }
    if (fields.size() != cols)
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                         " fields, found " + std::to_string(fields.size()));
    for (std::size_t j = 0; j < cols; ++j) values.push_back(parse_cell(fields[j], line_no, names[j]));
    ++rows;
  }
  if (rows == 0) throw InvalidInput("CSV input has no data rows");

  Dataset ds;
  ds.matrix = Matrix(rows, cols);
  std::copy(values.begin(), values.end(), ds.matrix.data().begin());
  ds.column_names = std::move(names);
  if (opts.transpose) {
    ds.matrix = ds.matrix.transposed();
    ds.column_names = default_names(ds.matrix.cols());
  }
  return ds;
}

Dataset read_csv(const std::filesystem::path& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), opts);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const Matrix& rows) {
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << csv_escape(header[j]);
  os << '\n';
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < rows.cols(); ++c) os << (c ? "," : "") << format_double(rows(r, c));
    os << '\n';
  }
}

}  // namespace dcov::cli
