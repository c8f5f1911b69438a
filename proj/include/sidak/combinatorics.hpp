#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sidak {

/// Exact non-negative integer (binomial coefficients, interleaving counts).
using Count = mpz_class;
/// Exact probability.
using Rational = mpq_class;

/// A real number held as sign * exp(log_magnitude). sign == 0 iff the value
/// is exactly zero, in which case log_magnitude is -inf.
struct LogReal {
  double log_magnitude = -INFINITY;
  int sign = 0;

  static LogReal from_value(double v);
  static LogReal from_log(double log_magnitude) { return {log_magnitude, 1}; }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

  LogReal operator*(const LogReal& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {log_magnitude + o.log_magnitude, sign * o.sign};
  }
};

/// C(n, k); zero outside 0 <= k <= n.
Count binomial(std::int64_t n, std::int64_t k);

/// ln B(a, b). Throws ParameterError unless a > 0 and b > 0.
double log_beta(double a, double b);

/// ln k!
inline double log_factorial(std::int64_t k) { return std::lgamma(static_cast<double>(k) + 1.0); }

/// Number of ordered b-tuples of non-negative integers summing to total with
/// every part <= cap, by inclusion-exclusion. A negative cap admits no tuple
/// unless b == 0.
Count bounded_composition_count(std::int64_t total, std::int64_t b, std::int64_t cap);

/// Same count by dynamic programming over the parts; used to cross-check the
/// closed form.
Count bounded_composition_count_dp(std::int64_t total, std::int64_t b, std::int64_t cap);

/// Number of ordered b-tuples summing to total whose largest part is exactly
/// `max_part`. For b == 0 only the empty tuple exists (count [total == 0]).
Count exact_max_composition_count(std::int64_t total, std::int64_t b, std::int64_t max_part);

/// Precomputed exact_max_composition_count(N, b, i) for a fixed box count b
/// and 0 <= N <= max_total, 0 <= i <= max_part.
class CompositionTable {
 public:
  CompositionTable(std::int64_t boxes, std::int64_t max_total, std::int64_t max_part);

  std::int64_t boxes() const { return boxes_; }
  std::int64_t max_total() const { return max_total_; }
  std::int64_t max_part() const { return max_part_; }

  /// w(N, b, i); zero outside the tabulated range where the count is zero
  /// anyway (N > b * i).
  const Count& exact_max(std::int64_t total, std::int64_t max_part) const;

 private:
  std::int64_t boxes_;
  std::int64_t max_total_;
  std::int64_t max_part_;
  std::vector<Count> table_;  // [max_part][total]
  Count zero_;
};

/// Decimal rendering of a non-negative rational, rounded half-up to
/// `digits` places after the point.
std::string to_decimal_string(const Rational& q, int digits);

}  // namespace sidak
