#include "input.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sidak_cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitInput, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool try_parse(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string where(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        row_has_content = false;
        ++line;
        break;
      default:
        field.push_back(ch);
        row_has_content = true;
    }
  }
  if (quoted) throw CliError(kExitInput, where(path, line) + ": unterminated quoted field");
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  double value = 0.0;
  if (slash == std::string::npos) {
    if (!try_parse(t, value)) throw CliError(kExitParameter, what + ": '" + text + "' is not a number");
    return value;
  }
  double num = 0.0, den = 0.0;
  if (!try_parse(trim(t.substr(0, slash)), num) || !try_parse(trim(t.substr(slash + 1)), den) || den == 0.0) {
    throw CliError(kExitParameter, what + ": '" + text + "' is not a valid fraction");
  }
  return num / den;
}

Column read_group_file(const std::string& path) {
  const std::string text = slurp(path);
  Column column;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream tokens(line);
    std::string token;
    std::vector<std::string> row;
    while (tokens >> token) row.push_back(token);
    if (row.empty()) continue;
    double value = 0.0;
    const bool header_candidate = column.values.empty() && column.name.empty() && row.size() == 1 &&
                                  std::isalpha(static_cast<unsigned char>(row[0][0]));
    if (header_candidate && !try_parse(row[0], value)) {
      column.name = row[0];
      continue;
    }
    for (const auto& tok : row) {
      if (!try_parse(tok, value)) {
        throw CliError(kExitInput, where(path, line_no) + ": non-numeric value '" + tok + "'");
      }
      column.values.push_back(value);
    }
  }
  if (column.values.empty()) throw CliError(kExitInput, path + ": no observations");
  return column;
}

Column read_csv_column(const std::string& path, const std::string& column) {
  const auto rows = parse_csv(slurp(path), path);
  if (rows.empty()) throw CliError(kExitInput, path + ": empty file (a header row is required)");
  const auto& header = rows.front();

  std::size_t index = header.size();
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (trim(header[k]) == column) index = k;
  }
  if (index == header.size()) {
    double position = 0.0;
    if (try_parse(column, position) && position >= 1 && position <= static_cast<double>(header.size()) &&
        position == static_cast<double>(static_cast<std::size_t>(position))) {
      index = static_cast<std::size_t>(position) - 1;
    } else {
      throw CliError(kExitInput, path + ": no column '" + column + "' in header");
    }
  }

  Column out;
  out.name = trim(header[index]);
  bool ended = false;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::string cell = index < rows[r].size() ? trim(rows[r][index]) : std::string();
    if (cell.empty()) {
      ended = true;
      continue;
    }
    if (ended) {
      throw CliError(kExitInput, path + ": row " + std::to_string(r + 1) + ": value after an empty cell in column '" +
                                     out.name + "'");
    }
    double value = 0.0;
    if (!try_parse(cell, value)) {
      throw CliError(kExitInput, path + ": row " + std::to_string(r + 1) + ": non-numeric value '" + cell + "'");
    }
    out.values.push_back(value);
  }
  if (out.values.empty()) throw CliError(kExitInput, path + ": column '" + out.name + "' has no observations");
  return out;
}

}  // namespace sidak_cli
