#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sidak {

/// One group's observations. Finite, non-empty; ties are allowed.
class Sample {
 public:
  explicit Sample(std::vector<double> observations, std::string label = {});

  std::span<const double> observations() const { return observations_; }
  std::size_t size() const { return observations_.size(); }
  const std::string& label() const { return label_; }

 private:
  std::vector<double> observations_;
  std::string label_;
};

struct Orders {
  int r = 1;
  int s = 1;
};

/// r = floor(rho1 * n) + 1, s = floor(rho2 * n) + 1 with 0 <= rho < 1.
Orders orders_from_rates(std::int64_t n, double rho1, double rho2);

/// Counts of training (X) values in the first r and last s cells cut by the
/// ordered test (Y) sample.
///
/// precedence[i-1] counts x in (Y(i-1), Y(i)] for i = 1..r with Y(0) = -inf;
/// exceedance[i-1] counts x in [Y(n-s+i), Y(n-s+i+1)) for i = 1..s with
/// Y(n+1) = +inf.
struct FrequencyVector {
  std::vector<std::int64_t> precedence;
  std::vector<std::int64_t> exceedance;
  std::int64_t m = 0;
  std::int64_t n = 0;

  int r() const { return static_cast<int>(precedence.size()); }
  int s() const { return static_cast<int>(exceedance.size()); }
  std::int64_t precedence_total() const;
  std::int64_t exceedance_total() const;
  std::int64_t total() const { return precedence_total() + exceedance_total(); }
  std::int64_t max_precedence() const;
  std::int64_t max_exceedance() const;

  /// Structural checks: non-negative counts, r, s >= 1, r + s <= n.
  /// Throws ParameterError. The total may still exceed m.
  void validate() const;
};

/// P = max precedence cell, E = max exceedance cell, T = P + E, Q = P,
/// B = total precedence count, A = number of test values above the s-th
/// largest training value, V = A + B.
struct StatisticBundle {
  std::int64_t P = 0;
  std::int64_t E = 0;
  std::int64_t T = 0;
  std::int64_t Q = 0;
  std::int64_t B = 0;
  std::optional<std::int64_t> A;  // requires s <= m
  std::optional<std::int64_t> V;  // requires r == s and m == n
};

/// Throws ParameterError when r < 1, s < 1 or r + s > n.
FrequencyVector frequency_vector(const Sample& training, const Sample& test, int r, int s);

StatisticBundle statistic_bundle(const Sample& training, const Sample& test, int r, int s);

/// True if some training value equals some test value. The distribution
/// theory assumes continuity, so such ties make it approximate.
bool has_cross_sample_ties(const Sample& training, const Sample& test);

/// Allocation-free evaluation of T, Q and (optionally) V for simulation
/// loops. Both spans are sorted in place.
struct FastStatistics {
  std::int64_t T = 0;
  std::int64_t Q = 0;
  std::int64_t V = 0;
};
FastStatistics evaluate_in_place(std::span<double> training, std::span<double> test, int r, int s,
                                 bool with_v);

}  // namespace sidak
