#include "sidak/lehmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sidak/error.hpp"

namespace sidak {

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

// Sum of positive terms given by their logarithms.
struct LogSumExp {
  double max = -std::numeric_limits<double>::infinity();
  double scaled = 0.0;

  bool empty() const { return scaled == 0.0; }
  void add(double log_value) {
    if (log_value > max) {
      scaled = scaled * std::exp(max - log_value) + 1.0;
      max = log_value;
    } else {
      scaled += std::exp(log_value - max);
    }
  }
  double log() const { return empty() ? -std::numeric_limits<double>::infinity() : max + std::log(scaled); }
};

struct MiddleSum {
  double log_value = 0.0;
  double condition = 1.0;  // double-precision estimate
};

// B(a, k + 1) = k! / (a (a + 1) ... (a + k)) for integer k.
template <class Real>
Real beta_integer_second(const Real& a, std::int64_t k) {
  Real num = 1;
  Real den = a;
  for (std::int64_t i = 1; i <= k; ++i) {
    num *= i;
    den *= a + i;
  }
  return num / den;
}

template <class Real>
bool middle_sum_extended(double base, double gamma, std::int64_t middle, std::int64_t rest,
                         int digits, double& log_value) {
  const Real g(gamma);
  const Real b(base);
  Real sum = 0;
  Real abs_sum = 0;
  Real choose = 1;  // C(middle, l)
  for (std::int64_t l = 0; l <= middle; ++l) {
    const Real term = choose * beta_integer_second<Real>(b + g * l, rest);
    abs_sum += term;
    if (l % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    choose = choose * (middle - l) / (l + 1);
  }
  if (sum <= 0) return false;
  const Real condition = abs_sum / sum;
  if (condition > Real(std::pow(10.0, digits - 12))) return false;
  log_value = static_cast<double>(boost::multiprecision::log(sum));
  return true;
}

// sum_{l=0}^{middle} (-1)^l C(middle, l) B(base + gamma * l, rest + 1), which
// equals the integral of t^(base-1) (1-t)^rest (1-t^gamma)^middle over (0,1)
// and is therefore positive.
MiddleSum middle_sum(double base, double gamma, std::int64_t middle, std::int64_t rest) {
  std::vector<double> logs(static_cast<std::size_t>(middle) + 1);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::int64_t l = 0; l <= middle; ++l) {
    logs[l] = log_factorial(middle) - log_factorial(l) - log_factorial(middle - l) +
              log_beta(base + gamma * static_cast<double>(l), static_cast<double>(rest) + 1.0);
    peak = std::max(peak, logs[l]);
  }
  CompensatedSum sum;
  double abs_sum = 0.0;
  for (std::int64_t l = 0; l <= middle; ++l) {
    const double term = std::exp(logs[l] - peak);
    abs_sum += term;
    sum.add(l % 2 == 0 ? term : -term);
  }
  const double value = sum.value();
  MiddleSum out;
  out.condition = value > 0.0 ? abs_sum / value : std::numeric_limits<double>::infinity();
  if (out.condition <= kExtendedPrecisionThreshold) {
    out.log_value = std::log(value) + peak;
    return out;
  }
  using boost::multiprecision::cpp_bin_float_50;
  using boost::multiprecision::cpp_bin_float_100;
  if (middle_sum_extended<cpp_bin_float_50>(base, gamma, middle, rest, 50, out.log_value)) return out;
  if (middle_sum_extended<cpp_bin_float_100>(base, gamma, middle, rest, 100, out.log_value)) return out;
  throw CancellationError("alternating sum could not be resolved at 100 digits", out.condition);
}

double log_gamma_power(const LehmannParams& params, std::int64_t r, std::int64_t s) {
  return static_cast<double>(r + s) * std::log(params.gamma);
}

// ln of the precedence Beta chain with the 1/f! factors of the multinomial.
double log_precedence_chain(const std::vector<std::int64_t>& f, double gamma) {
  double acc = 0.0;
  std::int64_t partial = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc -= log_factorial(f[i]);
    if (i > 0) {
      acc += log_beta(static_cast<double>(partial) + static_cast<double>(i) * gamma,
                      static_cast<double>(f[i]) + 1.0);
    }
    partial += f[i];
  }
  return acc;
}

// ln of the exceedance Beta chain: factor j (1-based) is
// B(m - sum_{i>=j} f_i + gamma (n - s + 1) + (j - 1) gamma, f_j + 1).
double log_exceedance_chain(const std::vector<std::int64_t>& f, std::int64_t m, std::int64_t n,
                            double gamma) {
  const auto s = static_cast<std::int64_t>(f.size());
  double acc = 0.0;
  std::int64_t suffix = 0;
  for (std::int64_t j = s - 1; j >= 0; --j) {
    suffix += f[j];
    acc -= log_factorial(f[j]);
    acc += log_beta(static_cast<double>(m - suffix) + gamma * static_cast<double>(n - s + 1 + j),
                    static_cast<double>(f[j]) + 1.0);
  }
  return acc;
}

double log_leading_constant(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                            const LehmannParams& params) {
  return log_factorial(m) + log_factorial(n) - log_factorial(n - r - s) + log_gamma_power(params, r, s);
}

// Visits every vector of `length` non-negative parts with sum <= budget in
// lexicographic order.
template <class Visit>
void for_each_bounded_vector(std::int64_t length, std::int64_t budget, Visit&& visit) {
  std::vector<std::int64_t> parts(static_cast<std::size_t>(length), 0);
  auto recurse = [&](auto&& self, std::int64_t index, std::int64_t remaining) -> void {
    if (index == length) {
      visit(static_cast<const std::vector<std::int64_t>&>(parts));
      return;
    }
    for (std::int64_t v = 0; v <= remaining; ++v) {
      parts[index] = v;
      self(self, index + 1, remaining - v);
    }
    parts[index] = 0;
  };
  recurse(recurse, 0, budget);
}

}  // namespace

void LehmannParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive and finite");
}

double AlternativeDistribution::cdf(std::int64_t t) const {
  if (t < 0) return 0.0;
  double acc = 0.0;
  for (std::int64_t k = 0; k <= std::min(t, m); ++k) acc += pmf[k];
  return std::min(acc, 1.0);
}

double AlternativeDistribution::upper_tail(std::int64_t t) const {
  if (t <= 0) return 1.0;
  double acc = 0.0;
  for (std::int64_t k = t; k <= m; ++k) acc += pmf[k];
  return std::min(acc, 1.0);
}

double joint_frequency_pmf_lehmann(const FrequencyVector& fv, const LehmannParams& params,
                                   double* condition) {
  fv.validate();
  params.validate();
  const std::int64_t n1 = fv.precedence_total();
  const std::int64_t n2 = fv.exceedance_total();
  if (n1 + n2 > fv.m) {
    if (condition) *condition = 1.0;
    return 0.0;
  }
  const std::int64_t r = fv.r(), s = fv.s();
  const std::int64_t rest = fv.m - n1 - n2;
  const MiddleSum mid = middle_sum(static_cast<double>(n1) + params.gamma * static_cast<double>(r),
                                   params.gamma, fv.n - r - s, rest);
  if (condition) *condition = mid.condition;
  const double log_p = log_leading_constant(fv.m, fv.n, r, s, params) - log_factorial(rest) +
                       mid.log_value + log_precedence_chain(fv.precedence, params.gamma) +
                       log_exceedance_chain(fv.exceedance, fv.m, fv.n, params.gamma);
  return std::clamp(std::exp(log_p), 0.0, 1.0);
}

double alternative_distribution_cost(std::int64_t m, std::int64_t n, std::int64_t r,
                                     std::int64_t s) {
  const double pairs = 0.5 * static_cast<double>(m + 1) * static_cast<double>(m + 2);
  return binomial(m + r, r).get_d() + binomial(m + s, s).get_d() +
         pairs * static_cast<double>(n - r - s + 1) + 0.25 * pairs * pairs;
}

AlternativeDistribution alternative_distribution(std::int64_t m, std::int64_t n, std::int64_t r,
                                                 std::int64_t s, const LehmannParams& params,
                                                 const LehmannOptions& options) {
  validate_design(m, n, r, s);
  params.validate();
  const double cost = alternative_distribution_cost(m, n, r, s);
  if (cost > options.budget) {
    throw BudgetError("alternative distribution needs about " + std::to_string(cost) +
                      " term evaluations (budget " + std::to_string(options.budget) + ")");
  }
  const double gamma = params.gamma;
  const auto width = static_cast<std::size_t>(m + 1);

  // The per-vector pmf factorizes into a precedence chain, an exceedance
  // chain and a middle term depending only on the totals (N1, N2). Group each
  // chain by (max cell, total) before combining.
  std::vector<LogSumExp> precedence(width * width);  // [max][N1]
  for_each_bounded_vector(r, m, [&](const std::vector<std::int64_t>& f) {
    const std::int64_t total = std::accumulate(f.begin(), f.end(), std::int64_t{0});
    const std::int64_t top = *std::max_element(f.begin(), f.end());
    precedence[top * width + total].add(log_precedence_chain(f, gamma));
  });
  std::vector<LogSumExp> exceedance(width * width);  // [max][N2]
  for_each_bounded_vector(s, m, [&](const std::vector<std::int64_t>& f) {
    const std::int64_t total = std::accumulate(f.begin(), f.end(), std::int64_t{0});
    const std::int64_t top = *std::max_element(f.begin(), f.end());
    exceedance[top * width + total].add(log_exceedance_chain(f, m, n, gamma));
  });

  AlternativeDistribution out;
  out.m = m;
  out.n = n;
  out.r = r;
  out.s = s;
  out.gamma = gamma;

  const std::int64_t middle = n - r - s;
  std::vector<double> log_middle(width * width, 0.0);  // [N1][N2], N1 + N2 <= m
  for (std::int64_t n1 = 0; n1 <= m; ++n1) {
    for (std::int64_t n2 = 0; n1 + n2 <= m; ++n2) {
      const std::int64_t rest = m - n1 - n2;
      const MiddleSum mid = middle_sum(static_cast<double>(n1) + gamma * static_cast<double>(r), gamma,
                                       middle, rest);
      out.condition_estimate = std::max(out.condition_estimate, mid.condition);
      log_middle[n1 * width + n2] = mid.log_value - log_factorial(rest);
    }
  }

  const double leading = log_leading_constant(m, n, r, s, params);
  std::vector<CompensatedSum> pmf(width);
  for (std::int64_t i = 0; i <= m; ++i) {
    for (std::int64_t n1 = i; n1 <= std::min(m, r * i); ++n1) {
      const LogSumExp& pre = precedence[i * width + n1];
      if (pre.empty()) continue;
      const double log_pre = pre.log();
      for (std::int64_t j = 0; i + j <= m; ++j) {
        for (std::int64_t n2 = j; n2 <= std::min(m - n1, s * j); ++n2) {
          const LogSumExp& exc = exceedance[j * width + n2];
          if (exc.empty()) continue;
          pmf[i + j].add(std::exp(leading + log_pre + exc.log() + log_middle[n1 * width + n2]));
        }
      }
    }
  }

  out.pmf.resize(width);
  out.mass = 0.0;
  for (std::size_t t = 0; t < width; ++t) {
    const double v = pmf[t].value();
    out.mass += v;
    out.pmf[t] = std::clamp(v, 0.0, 1.0);
  }
  if (std::fabs(out.mass - 1.0) > 1e-6) {
    throw CancellationError("alternative distribution failed its normalization check (mass " +
                                std::to_string(out.mass) + ")",
                            out.condition_estimate);
  }
  return out;
}

double exact_power(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                   const LehmannParams& params, double alpha, const LehmannOptions& options) {
  const NullDistribution null = null_distribution(m, n, r, s);
  const CriticalValue cv = exact_critical_value(null, alpha);
  const AlternativeDistribution alt = alternative_distribution(m, n, r, s, params, options);
  double power = alt.upper_tail(cv.c);
  if (cv.c >= 1) {
    const double phi = (alpha - cv.alpha1) / (cv.alpha2 - cv.alpha1);
    power += phi * alt.pmf[cv.c - 1];
  }
  return power;
}

}  // namespace sidak
