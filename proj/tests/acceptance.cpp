// Acceptance checks, one PASS/FAIL line per criterion.
//
//   sidak_acceptance            run every criterion
//   sidak_acceptance 3 5        run the listed criteria
//
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sidak/combinatorics.hpp"
#include "sidak/inference.hpp"
#include "sidak/lehmann.hpp"
#include "sidak/null_dist.hpp"
#include "sidak/statistics.hpp"

using namespace sidak;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- data

const std::vector<double> kTypeI = {32.0, 35.4, 36.2, 39.8, 41.2, 43.3, 45.5, 46.0, 46.2, 46.4,
                                    46.5, 46.8, 47.3, 47.3, 47.6, 49.2, 50.4, 50.9, 52.4, 56.3};
const std::vector<double> kTypeII = {39.4, 45.3, 49.2, 49.4, 51.3, 52.0, 53.2, 53.2, 54.9, 55.5,
                                     57.1, 57.2, 57.5, 59.2, 61.0, 62.4, 63.8, 64.3, 67.3, 67.7};

// Published critical values for r = s: rate, m, n, r, s, c, alpha1, alpha2.
struct RateRow {
  double rho;
  int m, n, r, s, c;
  double alpha1, alpha2;
};
const RateRow kRateTable[] = {
    {0.05, 10, 10, 1, 1, 6, 0.03, 0.07}, {0.05, 10, 20, 2, 2, 5, 0.03, 0.09},
    {0.05, 10, 30, 2, 2, 4, 0.03, 0.11}, {0.05, 20, 10, 1, 1, 10, 0.04, 0.06},
    {0.05, 20, 20, 2, 2, 8, 0.03, 0.06}, {0.05, 20, 30, 2, 2, 6, 0.04, 0.08},
    {0.05, 30, 10, 1, 1, 14, 0.04, 0.06}, {0.05, 30, 20, 2, 2, 11, 0.03, 0.06},
    {0.05, 30, 30, 2, 2, 8, 0.04, 0.07}, {0.1, 10, 10, 2, 2, 7, 0.03, 0.09},
    {0.1, 10, 20, 3, 3, 6, 0.01, 0.05}, {0.1, 10, 30, 4, 4, 5, 0.02, 0.09},
    {0.1, 20, 10, 2, 2, 12, 0.04, 0.07}, {0.1, 20, 20, 3, 3, 9, 0.02, 0.06},
    {0.1, 20, 30, 4, 4, 7, 0.04, 0.10}, {0.1, 30, 10, 2, 2, 17, 0.04, 0.06},
    {0.1, 30, 20, 3, 3, 12, 0.03, 0.05}, {0.1, 30, 30, 4, 4, 10, 0.03, 0.06},
    {0.25, 10, 10, 3, 3, 8, 0.02, 0.06}, {0.25, 10, 20, 6, 6, 6, 0.05, 0.17},
    {0.25, 10, 30, 8, 8, 6, 0.02, 0.07}, {0.25, 20, 10, 3, 3, 13, 0.04, 0.07},
    {0.25, 20, 20, 6, 6, 10, 0.04, 0.08}, {0.25, 20, 30, 8, 8, 9, 0.02, 0.05},
    {0.25, 30, 10, 3, 3, 18, 0.04, 0.07}, {0.25, 30, 20, 6, 6, 14, 0.03, 0.06},
    {0.25, 30, 30, 8, 8, 11, 0.04, 0.09}, {0.35, 10, 10, 4, 4, 8, 0.03, 0.10},
    {0.35, 10, 20, 8, 8, 7, 0.02, 0.07}, {0.35, 10, 30, 11, 11, 6, 0.02, 0.11},
    {0.35, 20, 10, 4, 4, 14, 0.03, 0.06}, {0.35, 20, 20, 8, 8, 11, 0.02, 0.06},
    {0.35, 20, 30, 11, 11, 9, 0.03, 0.09}, {0.35, 30, 10, 4, 4, 19, 0.05, 0.08},
    {0.35, 30, 20, 8, 8, 15, 0.02, 0.05}, {0.35, 30, 30, 11, 11, 12, 0.03, 0.07},
};

// Published critical values for balanced designs: m = n, r, s, c, alpha1, alpha2.
struct GridRow {
  int mn, r, s, c;
  double alpha1, alpha2;
};
const GridRow kOrderTable[] = {
    {10, 1, 1, 6, 0.03, 0.07}, {10, 1, 2, 7, 0.02, 0.05}, {10, 1, 3, 7, 0.02, 0.07}, {10, 1, 4, 7, 0.03, 0.09},
    {10, 2, 1, 7, 0.02, 0.05}, {10, 2, 2, 7, 0.03, 0.09}, {10, 2, 3, 7, 0.04, 0.12}, {10, 2, 4, 8, 0.02, 0.06},
    {10, 3, 1, 7, 0.03, 0.07}, {10, 3, 2, 7, 0.04, 0.12}, {10, 3, 3, 8, 0.02, 0.06}, {10, 3, 4, 8, 0.02, 0.08},
    {10, 4, 1, 7, 0.03, 0.09}, {10, 4, 2, 8, 0.02, 0.06}, {10, 4, 3, 8, 0.02, 0.08}, {10, 4, 4, 8, 0.03, 0.10},
    {20, 1, 1, 6, 0.04, 0.09}, {20, 1, 2, 7, 0.04, 0.08}, {20, 1, 3, 8, 0.02, 0.05}, {20, 1, 4, 8, 0.03, 0.07},
    {20, 2, 1, 7, 0.04, 0.08}, {20, 2, 2, 8, 0.03, 0.06}, {20, 2, 3, 8, 0.04, 0.09}, {20, 2, 4, 9, 0.02, 0.05},
    {20, 3, 1, 8, 0.02, 0.05}, {20, 3, 2, 8, 0.04, 0.09}, {20, 3, 3, 9, 0.03, 0.06}, {20, 3, 4, 9, 0.03, 0.07},
    {20, 4, 1, 8, 0.03, 0.07}, {20, 4, 2, 9, 0.02, 0.05}, {20, 4, 3, 9, 0.03, 0.07}, {20, 4, 4, 9, 0.04, 0.09},
    {20, 5, 1, 8, 0.04, 0.08}, {20, 5, 2, 9, 0.03, 0.06}, {20, 5, 3, 9, 0.04, 0.09}, {20, 5, 4, 10, 0.02, 0.05},
    {20, 6, 1, 8, 0.04, 0.09}, {20, 6, 2, 9, 0.03, 0.07}, {20, 6, 3, 9, 0.05, 0.10}, {20, 6, 4, 10, 0.03, 0.06},
    {20, 7, 1, 8, 0.05, 0.10}, {20, 7, 2, 9, 0.04, 0.09}, {20, 7, 3, 10, 0.02, 0.05}, {20, 7, 4, 10, 0.03, 0.07},
    {20, 8, 1, 9, 0.02, 0.06}, {20, 8, 2, 9, 0.04, 0.09}, {20, 8, 3, 10, 0.03, 0.06}, {20, 8, 4, 10, 0.03, 0.08},
    {20, 1, 5, 8, 0.04, 0.08}, {20, 1, 6, 8, 0.04, 0.09}, {20, 1, 7, 8, 0.05, 0.10}, {20, 1, 8, 9, 0.02, 0.06},
    {20, 2, 5, 9, 0.03, 0.06}, {20, 2, 6, 9, 0.03, 0.07}, {20, 2, 7, 9, 0.04, 0.09}, {20, 2, 8, 9, 0.04, 0.09},
    {20, 3, 5, 9, 0.04, 0.09}, {20, 3, 6, 9, 0.05, 0.10}, {20, 3, 7, 10, 0.02, 0.05}, {20, 3, 8, 10, 0.03, 0.06},
    {20, 4, 5, 10, 0.02, 0.05}, {20, 4, 6, 10, 0.03, 0.06}, {20, 4, 7, 10, 0.03, 0.07}, {20, 4, 8, 10, 0.03, 0.08},
    {20, 5, 5, 10, 0.03, 0.06}, {20, 5, 6, 10, 0.03, 0.07}, {20, 5, 7, 10, 0.04, 0.08}, {20, 5, 8, 10, 0.04, 0.09},
    {20, 6, 5, 10, 0.03, 0.07}, {20, 6, 6, 10, 0.04, 0.08}, {20, 6, 7, 10, 0.04, 0.09}, {20, 6, 8, 10, 0.05, 0.11},
    {20, 7, 5, 10, 0.04, 0.08}, {20, 7, 6, 10, 0.04, 0.09}, {20, 7, 7, 10, 0.05, 0.11}, {20, 7, 8, 11, 0.02, 0.05},
    {20, 8, 5, 10, 0.04, 0.09}, {20, 8, 6, 10, 0.05, 0.11}, {20, 8, 7, 11, 0.02, 0.05}, {20, 8, 8, 11, 0.02, 0.06},
};

// Published powers at the 5% level: m = n, r = s, gamma, power.
struct PowerRef {
  int mn, r;
  double gamma, power;
};
const PowerRef kTPower[] = {
    {10, 1, 0.5, 0.070}, {10, 1, 2, 0.189}, {10, 1, 3, 0.385}, {10, 1, 5, 0.678}, {10, 1, 10, 0.929},
    {10, 2, 0.5, 0.066}, {10, 2, 2, 0.138}, {10, 2, 3, 0.269}, {10, 2, 5, 0.520}, {10, 2, 10, 0.834},
    {20, 1, 0.5, 0.073}, {20, 1, 2, 0.324}, {20, 1, 3, 0.659}, {20, 1, 5, 0.932}, {20, 1, 10, 0.998},
    {20, 2, 0.5, 0.068}, {20, 2, 2, 0.266}, {20, 2, 3, 0.566}, {20, 2, 5, 0.888}, {20, 2, 10, 0.996},
};
const PowerRef kTPowerBalanced25[] = {
    {25, 1, 2, 0.379}, {25, 2, 2, 0.325}, {25, 3, 2, 0.274}, {25, 4, 2, 0.246},
    {25, 1, 3, 0.734}, {25, 2, 3, 0.666}, {25, 3, 3, 0.599}, {25, 4, 3, 0.552},
    {25, 1, 5, 0.965}, {25, 2, 5, 0.947}, {25, 3, 5, 0.918}, {25, 4, 5, 0.895},
};
const PowerRef kVPowerBalanced25[] = {
    {25, 1, 2, 0.506}, {25, 2, 2, 0.564}, {25, 3, 2, 0.592}, {25, 4, 2, 0.603},
    {25, 1, 3, 0.838}, {25, 2, 3, 0.884}, {25, 3, 3, 0.899}, {25, 4, 3, 0.904},
    {25, 1, 5, 0.985}, {25, 2, 5, 0.993}, {25, 3, 5, 0.994}, {25, 4, 5, 0.994},
};

constexpr double kAlpha = 0.05;
constexpr std::uint64_t kSeed = 20240601;

// ---------------------------------------------------------------- criteria

Outcome statistics_on_cable_data() {
  const auto start = Clock::now();
  Outcome out;
  const Sample x(kTypeI), y(kTypeII);
  const std::int64_t P[] = {3, 3, 10}, T[] = {3, 3, 10, 10}, V[] = {13, 20, 32, 32};
  const std::int64_t Ts[] = {10, 10, 10, 11}, Vs[] = {0, 0, 0, 1};
  int bad = 0;
  for (int r = 1; r <= 3; ++r) {
    const auto b = statistic_bundle(x, y, r, r);
    bad += b.P != P[r - 1] || b.E != 0;
  }
  for (int r = 1; r <= 4; ++r) {
    const auto b = statistic_bundle(x, y, r, r);
    bad += b.T != T[r - 1] || !b.V || *b.V != V[r - 1];
    const auto s = statistic_bundle(y, x, r, r);
    bad += s.T != Ts[r - 1] || !s.V || *s.V != Vs[r - 1];
  }
  const double elapsed = seconds_since(start);
  out.pass = bad == 0 && elapsed < 1.0;
  out.detail = fmt("%d mismatching values, %.3f s (limit 1 s)", bad, elapsed);
  return out;
}

Outcome fast_null_equals_enumeration() {
  const auto start = Clock::now();
  int designs = 0, bad = 0;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 2; n <= 6; ++n) {
      for (int r = 1; r < n; ++r) {
        for (int s = 1; r + s <= n; ++s) {
          ++designs;
          bad += !(null_distribution(m, n, r, s) == brute_force_null_distribution(m, n, r, s));
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = bad == 0 && elapsed < 30.0;
  out.detail = fmt("%d/%d designs equal as exact rationals, %.2f s (limit 30 s)", designs - bad, designs, elapsed);
  return out;
}

bool within_rounding(double exact, double printed) { return std::abs(exact - printed) <= 0.005 + 1e-12; }

Outcome critical_value_tables() {
  const auto start = Clock::now();
  int rate_c = 0, rate_total = 0, grid_c = 0, grid_total = 0, alpha_ok = 0, alpha_total = 0;
  std::string misses;
  for (const RateRow& row : kRateTable) {
    const Orders o = orders_from_rates(row.n, row.rho, row.rho);
    const CriticalValue cv = critical_value(row.m, row.n, o.r, o.s, kAlpha);
    ++rate_total;
    rate_c += cv.c == row.c && o.r == row.r && o.s == row.s;
    alpha_ok += within_rounding(cv.alpha1, row.alpha1) + within_rounding(cv.alpha2, row.alpha2);
    alpha_total += 2;
  }
  for (const GridRow& row : kOrderTable) {
    const CriticalValue cv = critical_value(row.mn, row.mn, row.r, row.s, kAlpha);
    ++grid_total;
    if (cv.c == row.c) {
      ++grid_c;
    } else {
      misses += fmt(" (m=n=%d,r=%d,s=%d: c=%lld vs %d)", row.mn, row.r, row.s, static_cast<long long>(cv.c), row.c);
    }
    alpha_ok += within_rounding(cv.alpha1, row.alpha1) + within_rounding(cv.alpha2, row.alpha2);
    alpha_total += 2;
  }
  const double elapsed = seconds_since(start);
  const double alpha_rate = double(alpha_ok) / alpha_total;
  const double c_rate = double(rate_c + grid_c) / (rate_total + grid_total);
  Outcome out;
  out.pass = rate_c == rate_total && c_rate >= 0.95 && alpha_rate >= 0.90 && elapsed < 300.0;
  out.detail = fmt("rate table c %d/%d; order grid c %d/%d; c overall %.1f%% (need 95%%); "
                   "alpha within 0.005 %d/%d = %.1f%% (need 90%%); %.2f s",
                   rate_c, rate_total, grid_c, grid_total, 100 * c_rate, alpha_ok, alpha_total, 100 * alpha_rate,
                   elapsed) +
               (misses.empty() ? "" : "; c misses:" + misses);
  return out;
}

Outcome lehmann_reduction_and_mass() {
  const auto start = Clock::now();
  double worst_rel = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 2; n <= 6; ++n) {
      for (int r = 1; r < n; ++r) {
        for (int s = 1; r + s <= n; ++s) {
          const NullDistribution null = null_distribution(m, n, r, s);
          const AlternativeDistribution alt = alternative_distribution(m, n, r, s, {1.0});
          for (int t = 0; t <= m; ++t) {
            const double want = null.pmf_value(t);
            if (want > 0) worst_rel = std::max(worst_rel, std::abs(alt.pmf[t] - want) / want);
            else worst_rel = std::max(worst_rel, std::abs(alt.pmf[t]));
          }
        }
      }
    }
  }
  double worst_mass = 0.0;
  for (int m = 1; m <= 10; ++m) {
    for (int n = 2; n <= 10; ++n) {
      for (int r = 1; r < n; ++r) {
        for (int s = 1; r + s <= n; ++s) {
          for (double g : {0.2, 0.5, 2.0, 5.0}) {
            const AlternativeDistribution alt = alternative_distribution(m, n, r, s, {g});
            double sum = 0;
            for (double p : alt.pmf) sum += p;
            worst_mass = std::max(worst_mass, std::abs(sum - 1.0));
          }
        }
      }
    }
  }
  Outcome out;
  out.pass = worst_rel <= 1e-10 && worst_mass <= 1e-6;
  out.detail = fmt("max relative gap to null %.2e (limit 1e-10); max |sum pmf - 1| %.2e (limit 1e-6); %.2f s",
                   worst_rel, worst_mass, seconds_since(start));
  return out;
}

Outcome power_tables() {
  Outcome out;
  int checked = 0, within = 0, size_checked = 0, size_ok = 0;
  std::string misses;
  PowerOptions opts;
  opts.reps = 100'000;
  opts.seed = kSeed;
  opts.calibration_reps = 1'000'000;
  std::uint64_t stream = 0;

  auto check_power = [&](int mn, int r, double gamma, double ref, Statistic st) {
    opts.stream = stream++;
    const PowerEstimate e = mc_power(mn, mn, r, r, kAlpha, lehmann(gamma), st, opts);
    ++checked;
    if (std::abs(e.power - ref) <= 0.01) {
      ++within;
    } else {
      misses += fmt(" (%s m=n=%d r=s=%d gamma=%g: %.4f vs %.3f)", to_string(st).c_str(), mn, r, gamma, e.power, ref);
    }
  };
  auto check_size = [&](int mn, int r, Statistic st) {
    opts.stream = stream++;
    const PowerEstimate e = mc_power(mn, mn, r, r, kAlpha, lehmann(1.0), st, opts);
    const double se = std::sqrt(kAlpha * (1 - kAlpha) / opts.reps);
    ++size_checked;
    if (std::abs(e.power - kAlpha) <= 3 * se) {
      ++size_ok;
    } else {
      misses += fmt(" (size %s m=n=%d r=s=%d: %.4f)", to_string(st).c_str(), mn, r, e.power);
    }
  };

  auto start = Clock::now();
  for (const PowerRef& p : kTPower) check_power(p.mn, p.r, p.gamma, p.power, Statistic::T);
  for (int mn : {10, 20}) {
    for (int r : {1, 2}) check_size(mn, r, Statistic::T);
  }
  const double first_table = seconds_since(start);
  start = Clock::now();
  for (const PowerRef& p : kTPowerBalanced25) check_power(p.mn, p.r, p.gamma, p.power, Statistic::T);
  for (const PowerRef& p : kVPowerBalanced25) check_power(p.mn, p.r, p.gamma, p.power, Statistic::V);
  for (int r = 1; r <= 4; ++r) {
    check_size(25, r, Statistic::T);
    check_size(25, r, Statistic::V);
  }
  const double second_table = seconds_since(start);

  out.pass = within == checked && size_ok == size_checked && first_table < 600 && second_table < 600;
  out.detail = fmt("%d/%d cells within 0.01; size within 3 s.e. %d/%d; %.1f s + %.1f s (limit 600 s each)", within,
                   checked, size_ok, size_checked, first_table, second_table) +
               (misses.empty() ? "" : ";" + misses);
  return out;
}

Outcome exact_versus_simulated_power() {
  Outcome out;
  PowerOptions opts;
  opts.reps = 1'000'000;
  opts.seed = kSeed;
  std::string detail;
  std::uint64_t stream = 100;
  for (double g : {0.5, 2.0}) {
    opts.stream = stream++;
    const double exact = exact_power(10, 10, 1, 1, {g}, kAlpha);
    const PowerEstimate mc = mc_power(10, 10, 1, 1, kAlpha, lehmann(g), Statistic::T, opts);
    const double z = (mc.power - exact) / mc.std_error;
    out.pass = out.pass && std::abs(z) <= 4.0;
    detail += fmt("%sgamma=%g exact %.5f mc %.5f (z=%.2f)", detail.empty() ? "" : "; ", g, exact, mc.power, z);
  }
  out.detail = detail + " (limit |z| <= 4)";
  return out;
}

Outcome asymptotic_cdf() {
  const NullDistribution exact = null_distribution(200, 200, 2, 2);
  const std::int64_t cap = default_asymptotic_truncation(2, 2);
  double worst = 0.0;
  for (int t = 0; t <= 10; ++t) worst = std::max(worst, std::abs(asymptotic_null_cdf(2, 2, t, cap) - exact.cdf_value(t)));
  Outcome out;
  out.pass = worst <= 0.01;
  out.detail = fmt("max |approx - exact| over t=0..10 at m=n=200, r=s=2: %.4f (limit 0.01)", worst);
  return out;
}

Outcome property_suite() {
  int failures = 0, checks = 0;
  const std::pair<int, int> sizes[] = {{5, 5}, {10, 10}, {10, 20}, {20, 10}, {20, 20}, {30, 30}, {25, 15}};
  for (auto [m, n] : sizes) {
    for (int r = 1; r <= 5; ++r) {
      for (int s = 1; s <= 5 && r + s <= n; ++s) {
        const NullDistribution d = null_distribution(m, n, r, s);
        Rational sum = 0;
        bool monotone = true;
        for (int t = 0; t <= m; ++t) {
          sum += d.pmf(t);
          if (t > 0 && d.cdf(t) < d.cdf(t - 1)) monotone = false;
        }
        checks += 3;
        failures += sum != 1;
        failures += !monotone;
        failures += d.counts() != null_distribution(m, n, s, r).counts();
      }
    }
  }
  std::mt19937_64 gen(kSeed);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(15), y(12);
    for (auto& v : x) v = z(gen);
    for (auto& v : y) v = z(gen);
    std::vector<double> xs = x, ys = y;
    const double shift = 10.0 * z(gen);
    for (auto& v : xs) v += shift;
    for (auto& v : ys) v += shift;
    const auto a = frequency_vector(Sample(x), Sample(y), 3, 4);
    const auto b = frequency_vector(Sample(xs), Sample(ys), 3, 4);
    ++checks;
    failures += a.precedence != b.precedence || a.exceedance != b.exceedance;
  }
  for (int total = 0; total <= 12; ++total) {
    for (int b = 1; b <= 12; ++b) {
      Count sum = 0;
      for (int i = 0; i <= total; ++i) sum += exact_max_composition_count(total, b, i);
      ++checks;
      failures += sum != binomial(total + b - 1, b - 1);
    }
  }
  Outcome out;
  out.pass = failures == 0;
  out.detail = fmt("%d/%d property checks hold", checks - failures, checks);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Outcome cli_determinism() {
  const std::string dir = SIDAK_ACCEPTANCE_WORKDIR;
  const std::string cli = SIDAK_CLI_PATH;
  const std::string data = SIDAK_CABLE_DATA;
  const std::vector<std::string> commands = {
      "--seed 5 --reps 20000 --format json compare --m 10 --r 1,2 --gamma 1/2,2,3 --calibration-reps 50000",
      "--seed 5 --reps 20000 power --m 10,20 --r 1 --gamma 2 --alternative exponential --rate 2",
      "--seed 5 --reps 20000 critical-values --method mc --m 10,20 --n 10,20 --rho 0.05,0.1",
      "--seed 5 test --input " + data + " --training-column type_I --test-column type_II --r 2 --s 2",
  };
  Outcome out;
  int identical = 0;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const std::string file = dir + "/determinism_" + std::to_string(k) + "_" + std::to_string(run);
      const std::string cmd = "\"" + cli + "\" --out \"" + file + "\" " + commands[k] + " 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) {
        out.pass = false;
        out.detail = "command failed: " + cmd;
        return out;
      }
      outputs[run] = read_file(file);
    }
    identical += !outputs[0].empty() && outputs[0] == outputs[1];
  }
  out.pass = identical == static_cast<int>(commands.size());
  out.detail = fmt("%d/%zu commands byte-identical across two runs", identical, commands.size());
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "statistics on the cable insulation data", statistics_on_cable_data},
      {2, "fast null distribution equals enumeration (m, n <= 6)", fast_null_equals_enumeration},
      {3, "critical-value tables", critical_value_tables},
      {4, "Lehmann reduction and normalization", lehmann_reduction_and_mass},
      {5, "power tables by simulation", power_tables},
      {6, "exact versus simulated power under H1", exact_versus_simulated_power},
      {7, "large-sample null cdf", asymptotic_cdf},
      {8, "property suite", property_suite},
      {9, "CLI determinism", cli_determinism},
  };
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::atoi(argv[k]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
