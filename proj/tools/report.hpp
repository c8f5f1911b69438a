#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sidak_cli {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

// Rows of named cells rendered either as CSV (header first) or as
// {"config": ..., "results": [...]}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row) { rows.push_back(std::move(row)); }
};

void write_table(std::ostream& out, const Table& table, const Json& config, Format format);

// CSV rendering of one cell; arrays are joined with spaces.
std::string csv_cell(const Json& value);

// Value rounded to `digits` decimals so JSON and CSV print the same text.
double rounded(double value, int digits);

}  // namespace sidak_cli
