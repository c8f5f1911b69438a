#include "sidak/null_dist.hpp"

#include <algorithm>
#include <cmath>

#include "sidak/error.hpp"

namespace sidak {

void validate_design(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s) {
  if (m < 1) throw ParameterError("m must be at least 1");
  if (r < 1 || s < 1) throw ParameterError("r and s must be at least 1");
  if (r + s > n) {
    throw ParameterError("r + s = " + std::to_string(r + s) + " exceeds n = " + std::to_string(n));
  }
}

NullDistribution::NullDistribution(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                                   std::vector<Count> counts)
    : m_(m), n_(n), r_(r), s_(s), counts_(std::move(counts)), total_(binomial(m + n, n)) {
  if (counts_.size() != static_cast<std::size_t>(m + 1)) {
    throw ParameterError("NullDistribution: support must be {0..m}");
  }
}

Rational NullDistribution::pmf(std::int64_t t) const {
  if (t < 0 || t > m_) return 0;
  Rational q(counts_[t], total_);
  q.canonicalize();
  return q;
}

Rational NullDistribution::cdf(std::int64_t t) const {
  if (t < 0) return 0;
  if (t >= m_) return 1;
  Count acc = 0;
  for (std::int64_t k = 0; k <= t; ++k) acc += counts_[k];
  Rational q(acc, total_);
  q.canonicalize();
  return q;
}

Rational NullDistribution::upper_tail(std::int64_t t) const {
  if (t <= 0) return 1;
  if (t > m_) return 0;
  Count acc = 0;
  for (std::int64_t k = t; k <= m_; ++k) acc += counts_[k];
  Rational q(acc, total_);
  q.canonicalize();
  return q;
}

Rational joint_frequency_pmf_null(const FrequencyVector& fv) {
  fv.validate();
  const std::int64_t total = fv.total();
  if (total > fv.m) return 0;
  const std::int64_t middle = fv.n - fv.r() - fv.s();
  Rational q(binomial(fv.m - total + middle, middle), binomial(fv.m + fv.n, fv.n));
  q.canonicalize();
  return q;
}

Rational joint_PE_pmf(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                      std::int64_t i, std::int64_t j) {
  validate_design(m, n, r, s);
  if (i < 0 || j < 0 || i > m || j > m) return 0;
  const std::int64_t middle = n - r - s;
  Count acc = 0;
  const std::int64_t n_max = std::min(m, r * i + s * j);
  for (std::int64_t total = 0; total <= n_max; ++total) {
    const Count weight = binomial(m - total + middle, middle);
    for (std::int64_t n1 = 0; n1 <= std::min(total, r * i); ++n1) {
      if (total - n1 > s * j) continue;
      acc += exact_max_composition_count(n1, r, i) * exact_max_composition_count(total - n1, s, j) *
             weight;
    }
  }
  Rational q(acc, binomial(m + n, n));
  q.canonicalize();
  return q;
}

NullDistribution null_distribution(std::int64_t m, std::int64_t n, std::int64_t r,
                                   std::int64_t s) {
  validate_design(m, n, r, s);
  const std::int64_t middle = n - r - s;
  const CompositionTable pre(r, m, m);
  const CompositionTable exc(s, m, m);

  std::vector<Count> weight(static_cast<std::size_t>(m) + 1);
  for (std::int64_t total = 0; total <= m; ++total) {
    weight[total] = binomial(m - total + middle, middle);
  }

  std::vector<Count> counts(static_cast<std::size_t>(m) + 1, 0);
  std::vector<Count> folded(static_cast<std::size_t>(m) + 1);
  for (std::int64_t j = 0; j <= m; ++j) {
    // folded[n1] = sum over n2 of w(n2, s, j) * weight[n1 + n2]
    const std::int64_t n2_lo = j;
    for (std::int64_t n1 = 0; n1 + j <= m; ++n1) {
      Count acc = 0;
      const std::int64_t n2_hi = std::min(s * j, m - n1);
      for (std::int64_t n2 = n2_lo; n2 <= n2_hi; ++n2) {
        const Count& w = exc.exact_max(n2, j);
        if (w != 0) acc += w * weight[n1 + n2];
      }
      folded[n1] = std::move(acc);
    }
    for (std::int64_t i = 0; i + j <= m; ++i) {
      Count joint = 0;
      const std::int64_t n1_hi = std::min(r * i, m - j);
      for (std::int64_t n1 = i; n1 <= n1_hi; ++n1) {
        const Count& w = pre.exact_max(n1, i);
        if (w != 0) joint += w * folded[n1];
      }
      counts[i + j] += joint;
    }
  }
  return NullDistribution(m, n, r, s, std::move(counts));
}

NullDistribution brute_force_null_distribution(std::int64_t m, std::int64_t n, std::int64_t r,
                                               std::int64_t s) {
  validate_design(m, n, r, s);
  if (binomial(m + n, n) > kBruteForceLimit) {
    throw BudgetError("brute force enumeration exceeds " + std::to_string(kBruteForceLimit) +
                      " interleavings");
  }
  // Interleavings as bitmasks over m + n positions (true = training value),
  // stepped in lexicographic order with std::prev_permutation.
  const auto size = static_cast<std::size_t>(m + n);
  std::vector<char> is_training(size, 0);
  std::fill(is_training.begin(), is_training.begin() + m, 1);

  std::vector<std::int64_t> cells(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint64_t> tally(static_cast<std::size_t>(m) + 1, 0);
  do {
    std::fill(cells.begin(), cells.end(), 0);
    std::size_t cell = 0;
    for (char x : is_training) {
      if (x) {
        ++cells[cell];
      } else {
        ++cell;
      }
    }
    // Cell k holds the training values between the k-th and (k+1)-th test values.
    const std::int64_t p = *std::max_element(cells.begin(), cells.begin() + r);
    const std::int64_t e = *std::max_element(cells.begin() + (n - s + 1), cells.end());
    ++tally[p + e];
  } while (std::prev_permutation(is_training.begin(), is_training.end()));

  std::vector<Count> counts(tally.size());
  for (std::size_t t = 0; t < tally.size(); ++t) counts[t] = static_cast<unsigned long>(tally[t]);
  return NullDistribution(m, n, r, s, std::move(counts));
}

double asymptotic_null_cdf(std::int64_t r, std::int64_t s, std::int64_t t, std::int64_t max_total) {
  if (r < 1 || s < 1) throw ParameterError("r and s must be at least 1");
  if (max_total < 1) throw ParameterError("truncation must be positive");
  if (t < 0) return 0.0;
  const CompositionTable pre(r, max_total, t);
  const CompositionTable exc(s, max_total, t);
  double acc = 0.0;
  for (std::int64_t k = 0; k <= t; ++k) {
    for (std::int64_t i = 0; i <= k; ++i) {
      const std::int64_t j = k - i;
      const std::int64_t n_hi = std::min(max_total, r * i + s * j);
      for (std::int64_t total = 0; total <= n_hi; ++total) {
        const double weight = std::ldexp(1.0, -static_cast<int>(total + r + s));
        for (std::int64_t n1 = 0; n1 <= std::min(total, r * i); ++n1) {
          if (total - n1 > s * j) continue;
          const Count& a = pre.exact_max(n1, i);
          if (a == 0) continue;
          const Count& b = exc.exact_max(total - n1, j);
          if (b == 0) continue;
          acc += Count(a * b).get_d() * weight;
        }
      }
    }
  }
  return acc;
}

std::int64_t default_asymptotic_truncation(std::int64_t r, std::int64_t s) {
  if (r < 1 || s < 1) throw ParameterError("r and s must be at least 1");
  // Total weight at N is C(N + b - 1, b - 1) / 2^(N + b) with b = r + s:
  // a negative binomial mass. Accumulate until the remaining tail < 1e-12.
  const std::int64_t b = r + s;
  double mass = 0.0;
  double term = std::ldexp(1.0, -static_cast<int>(b));  // N = 0
  std::int64_t n = 0;
  for (;; ++n) {
    mass += term;
    if (1.0 - mass < 1e-12 && n >= 40) break;
    term *= static_cast<double>(n + b) / static_cast<double>(n + 1) * 0.5;
    if (n > 100000) break;
  }
  return n;
}

CriticalValue critical_value_from_tail(const std::vector<double>& tail, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  CriticalValue cv;
  std::int64_t c = 0;
  while (c < static_cast<std::int64_t>(tail.size()) && tail[c] > alpha) ++c;
  cv.c = c;
  cv.alpha1 = c < static_cast<std::int64_t>(tail.size()) ? tail[c] : 0.0;
  cv.alpha2 = c > 0 ? tail[c - 1] : 1.0;
  return cv;
}

CriticalValue exact_critical_value(const NullDistribution& null, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  const Rational level(alpha);  // exact binary value of alpha
  CriticalValue cv;
  std::int64_t c = 0;
  Rational tail = 1;  // P[T >= 0]
  while (tail > level) {
    tail -= null.pmf(c);
    ++c;
  }
  cv.c = c;
  cv.exact = true;
  cv.exact_alpha1 = tail;
  cv.exact_alpha2 = c > 0 ? null.upper_tail(c - 1) : Rational(1);
  cv.alpha1 = cv.exact_alpha1.get_d();
  cv.alpha2 = cv.exact_alpha2.get_d();
  return cv;
}

}  // namespace sidak
