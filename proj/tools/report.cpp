#include "report.hpp"

#include <cmath>

namespace sidak_cli {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string csv_cell(const Json& value) {
  if (value.is_null()) return {};
  if (value.is_string()) return quote_if_needed(value.get<std::string>());
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_array()) {
    std::string joined;
    for (const auto& v : value) {
      if (!joined.empty()) joined.push_back(' ');
      joined += csv_cell(v);
    }
    return quote_if_needed(joined);
  }
  return value.dump();
}

double rounded(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(value * scale) / scale;
}

void write_table(std::ostream& out, const Table& table, const Json& config, Format format) {
  if (format == Format::csv) {
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      out << (k ? "," : "") << quote_if_needed(table.columns[k]);
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
      out << "\r\n";
    }
    return;
  }
  Json results = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[table.columns[k]] = row[k];
    results.push_back(std::move(obj));
  }
  Json doc = Json::object();
  doc["config"] = config;
  doc["results"] = std::move(results);
  out << doc.dump(2) << "\n";
}

}  // namespace sidak_cli
