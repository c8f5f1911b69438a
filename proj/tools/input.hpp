#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sidak_cli {

// Carries the process exit code alongside the message.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

inline constexpr int kExitInput = 2;
inline constexpr int kExitParameter = 3;
inline constexpr int kExitBudget = 4;

struct Column {
  std::string name;
  std::vector<double> values;
};

// Whitespace/comma-delimited numbers. A first line holding a single
// non-numeric token starting with a letter is taken as the column name.
Column read_group_file(const std::string& path);

// RFC-4180 CSV with a mandatory header row; `column` is a header name or a
// 1-based index. Trailing empty cells end a ragged column.
Column read_csv_column(const std::string& path, const std::string& column);

// Parses "0.5", "2" or "1/2".
double parse_number(const std::string& text, const std::string& what);

}  // namespace sidak_cli
