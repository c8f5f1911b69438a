#include "sidak/combinatorics.hpp"

#include <algorithm>
#include <sstream>

#include "sidak/error.hpp"

namespace sidak {

LogReal LogReal::from_value(double v) {
  if (v == 0.0) return {};
  return {std::log(std::fabs(v)), v < 0 ? -1 : 1};
}

Count binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Count out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ParameterError("log_beta: arguments must be positive");
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

Count bounded_composition_count(std::int64_t total, std::int64_t b, std::int64_t cap) {
  if (total < 0 || b < 0) return 0;
  if (b == 0) return total == 0 ? 1 : 0;
  if (cap < 0) return 0;
  Count sum = 0;
  for (std::int64_t j = 0; j <= b; ++j) {
    const std::int64_t rest = total - j * (cap + 1);
    if (rest < 0) break;
    const Count term = binomial(b, j) * binomial(rest + b - 1, b - 1);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

Count bounded_composition_count_dp(std::int64_t total, std::int64_t b, std::int64_t cap) {
  if (total < 0 || b < 0) return 0;
  if (b == 0) return total == 0 ? 1 : 0;
  if (cap < 0) return 0;
  // ways[t]: tuples of the parts placed so far summing to t.
  std::vector<Count> ways(static_cast<std::size_t>(total) + 1, 0);
  ways[0] = 1;
  for (std::int64_t part = 0; part < b; ++part) {
    std::vector<Count> next(ways.size(), 0);
    Count window = 0;
    for (std::int64_t t = 0; t <= total; ++t) {
      window += ways[t];
      if (t - cap - 1 >= 0) window -= ways[t - cap - 1];
      next[t] = window;
    }
    ways.swap(next);
  }
  return ways[total];
}

Count exact_max_composition_count(std::int64_t total, std::int64_t b, std::int64_t max_part) {
  if (total < 0 || max_part < 0 || b < 0) return 0;
  if (b == 0) return total == 0 ? 1 : 0;
  if (max_part == 0) return total == 0 ? 1 : 0;
  return bounded_composition_count(total, b, max_part) -
         bounded_composition_count(total, b, max_part - 1);
}

CompositionTable::CompositionTable(std::int64_t boxes, std::int64_t max_total,
                                   std::int64_t max_part)
    : boxes_(boxes), max_total_(max_total), max_part_(max_part), zero_(0) {
  if (boxes < 1 || max_total < 0 || max_part < 0) {
    throw ParameterError("CompositionTable: invalid dimensions");
  }
  const auto width = static_cast<std::size_t>(max_total + 1);
  table_.assign(static_cast<std::size_t>(max_part + 1) * width, 0);

  // Pascal rows up to max_total + boxes for the inclusion-exclusion sums.
  const std::int64_t top = max_total + boxes;
  std::vector<std::vector<Count>> pascal(static_cast<std::size_t>(top) + 1);
  for (std::int64_t n = 0; n <= top; ++n) {
    auto& row = pascal[n];
    row.resize(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    row[n] = 1;
    for (std::int64_t k = 1; k < n; ++k) row[k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  auto choose = [&](std::int64_t n, std::int64_t k) -> const Count& {
    return (n < 0 || k < 0 || k > n) ? zero_ : pascal[n][k];
  };

  std::vector<Count> below(width, 0);  // bounded count with cap = i - 1
  std::vector<Count> bounded(width, 0);
  for (std::int64_t i = 0; i <= max_part; ++i) {
    for (std::int64_t n = 0; n <= max_total; ++n) {
      Count sum = 0;
      for (std::int64_t j = 0; j <= boxes; ++j) {
        const std::int64_t rest = n - j * (i + 1);
        if (rest < 0) break;
        const Count term = choose(boxes, j) * choose(rest + boxes - 1, boxes - 1);
        if (j % 2 == 0) {
          sum += term;
        } else {
          sum -= term;
        }
      }
      bounded[n] = sum;
      table_[static_cast<std::size_t>(i) * width + n] = (i == 0) ? Count(n == 0 ? 1 : 0) : sum - below[n];
    }
    below.swap(bounded);
  }
}

const Count& CompositionTable::exact_max(std::int64_t total, std::int64_t max_part) const {
  if (total < 0 || max_part < 0 || total > max_total_ || max_part > max_part_) return zero_;
  return table_[static_cast<std::size_t>(max_part) * static_cast<std::size_t>(max_total_ + 1) + total];
}

std::string to_decimal_string(const Rational& q, int digits) {
  if (q < 0) throw ParameterError("to_decimal_string: negative value");
  Count scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round(q * 10^digits) = floor((2 * num * scale + den) / (2 * den))
  Count scaled = (2 * q.get_num() * scale + q.get_den()) / (2 * q.get_den());
  Count whole = scaled / scale;
  Count frac = scaled % scale;
  std::string frac_str = frac.get_str();
  std::ostringstream out;
  out << whole.get_str();
  if (digits > 0) {
    out << '.' << std::string(static_cast<std::size_t>(digits) - frac_str.size(), '0') << frac_str;
  }
  return out.str();
}

}  // namespace sidak
