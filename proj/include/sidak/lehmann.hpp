#pragma once

#include <cstdint>
#include <vector>

#include "sidak/null_dist.hpp"
#include "sidak/statistics.hpp"

namespace sidak {

/// Lehmann alternative G = F^gamma for the test group. gamma = 1 is H0;
/// gamma > 1 makes the test group stochastically larger.
struct LehmannParams {
  double gamma = 1.0;

  void validate() const;
};

struct LehmannOptions {
  /// Upper bound on term evaluations for alternative_distribution.
  double budget = 1e8;
};

/// Distribution of T under a Lehmann alternative on {0, ..., m}.
struct AlternativeDistribution {
  std::int64_t m = 0, n = 0, r = 0, s = 0;
  double gamma = 1.0;
  std::vector<double> pmf;
  /// Largest ratio sum|term| / |sum| met in the alternating sums, before any
  /// switch to extended precision.
  double condition_estimate = 1.0;
  /// Total mass before per-entry clamping to [0, 1].
  double mass = 0.0;

  double cdf(std::int64_t t) const;
  /// P[T >= t].
  double upper_tail(std::int64_t t) const;
};

/// Condition numbers above this trigger extended precision. Terms built
/// from lgamma carry relative errors near 1e-14, so a double-precision sum
/// with this condition keeps about ten correct digits.
inline constexpr double kExtendedPrecisionThreshold = 1e4;

/// P[f | H1] for one frequency vector, clamped to [0, 1]. When
/// `condition` is non-null it receives the double-precision condition
/// estimate of the alternating sum. Throws CancellationError if even the
/// widest working precision cannot resolve the sum.
double joint_frequency_pmf_lehmann(const FrequencyVector& fv, const LehmannParams& params,
                                   double* condition = nullptr);

/// Aggregates the per-vector pmf by T. Throws BudgetError above
/// options.budget term evaluations.
AlternativeDistribution alternative_distribution(std::int64_t m, std::int64_t n, std::int64_t r,
                                                 std::int64_t s, const LehmannParams& params,
                                                 const LehmannOptions& options = {});

/// E(Phi | H1) of the exact randomized size-alpha test.
double exact_power(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                   const LehmannParams& params, double alpha, const LehmannOptions& options = {});

/// Work estimate used by the budget guard.
double alternative_distribution_cost(std::int64_t m, std::int64_t n, std::int64_t r,
                                     std::int64_t s);

}  // namespace sidak
