#pragma once

#include <cstdint>
#include <vector>

#include "sidak/combinatorics.hpp"
#include "sidak/statistics.hpp"

namespace sidak {

/// Throws ParameterError unless m >= 1, r, s >= 1 and 2 <= r + s <= n.
void validate_design(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s);

/// Exact null distribution of T = P_r + E_s on the support {0, ..., m}.
///
/// Probabilities are held as interleaving counts over the common
/// denominator C(m + n, n), so every pmf/cdf value is an exact rational.
class NullDistribution {
 public:
  NullDistribution(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                   std::vector<Count> counts);

  std::int64_t m() const { return m_; }
  std::int64_t n() const { return n_; }
  std::int64_t r() const { return r_; }
  std::int64_t s() const { return s_; }

  /// Number of interleavings with T = t, for t = 0..m.
  const std::vector<Count>& counts() const { return counts_; }
  /// C(m + n, n).
  const Count& total() const { return total_; }

  Rational pmf(std::int64_t t) const;
  Rational cdf(std::int64_t t) const;
  /// P[T >= t]; 1 for t <= 0 and 0 for t > m.
  Rational upper_tail(std::int64_t t) const;

  double pmf_value(std::int64_t t) const { return pmf(t).get_d(); }
  double cdf_value(std::int64_t t) const { return cdf(t).get_d(); }
  double upper_tail_value(std::int64_t t) const { return upper_tail(t).get_d(); }

  friend bool operator==(const NullDistribution& a, const NullDistribution& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.r_ == b.r_ && a.s_ == b.s_ && a.counts_ == b.counts_;
  }

 private:
  std::int64_t m_, n_, r_, s_;
  std::vector<Count> counts_;
  Count total_;
};

/// P[f | H0] = C(m - N + n - r - s, n - r - s) / C(m + n, n) with N the total
/// count of fv; zero when N > m.
Rational joint_frequency_pmf_null(const FrequencyVector& fv);

/// P[P_r = i, E_s = j | H0] by grouping frequency vectors on (N1, N2) and
/// counting bounded compositions with a prescribed maximum.
Rational joint_PE_pmf(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                      std::int64_t i, std::int64_t j);

NullDistribution null_distribution(std::int64_t m, std::int64_t n, std::int64_t r,
                                   std::int64_t s);

/// Enumerates all C(m + n, n) interleavings. Throws BudgetError above
/// kBruteForceLimit interleavings.
inline constexpr std::int64_t kBruteForceLimit = 10'000'000;
NullDistribution brute_force_null_distribution(std::int64_t m, std::int64_t n, std::int64_t r,
                                               std::int64_t s);

/// Large-sample (m/n -> 1) approximation of P[T <= t | H0]: the exact
/// hypergeometric weight is replaced by (1/2)^(N + r + s) and the total count
/// N is truncated at max_total.
double asymptotic_null_cdf(std::int64_t r, std::int64_t s, std::int64_t t, std::int64_t max_total);

/// Smallest truncation whose neglected weight, summed over all frequency
/// vectors with total > N_max, is below 1e-12.
std::int64_t default_asymptotic_truncation(std::int64_t r, std::int64_t s);

/// Critical value c with attained sizes alpha1 = P[T >= c], alpha2 = P[T >= c-1].
struct CriticalValue {
  std::int64_t c = 0;
  double alpha1 = 0.0;
  double alpha2 = 1.0;
  /// Exact tails; only set when computed from a NullDistribution.
  Rational exact_alpha1;
  Rational exact_alpha2;
  bool exact = false;
};

/// Minimal c with P[T >= c | H0] <= alpha. Throws ParameterError unless
/// 0 < alpha < 1.
CriticalValue exact_critical_value(const NullDistribution& null, double alpha);

/// Minimal c with tail[c] <= alpha for an arbitrary upper-tail table where
/// tail[0] = 1 and tail is non-increasing.
CriticalValue critical_value_from_tail(const std::vector<double>& tail, double alpha);

}  // namespace sidak
