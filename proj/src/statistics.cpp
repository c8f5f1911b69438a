#include "sidak/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sidak/error.hpp"

namespace sidak {

namespace {

void check_orders(std::int64_t n, int r, int s) {
  if (r < 1 || s < 1) throw ParameterError("r and s must be at least 1");
  if (r + s > n) {
    throw ParameterError("r + s = " + std::to_string(r + s) + " exceeds test sample size n = " +
                         std::to_string(n));
  }
}

// Cell of x among the sorted test values: `below` = #{y < x} puts x in
// precedence cell below + 1 when that is <= r; `at_or_below` = #{y <= x}
// puts x in exceedance cell at_or_below - n + s when that is in 1..s.
template <class OnPrecedence, class OnExceedance>
void assign_cells(std::span<const double> sorted_test, double x, int r, int s,
                  OnPrecedence&& on_precedence, OnExceedance&& on_exceedance) {
  const auto n = static_cast<std::int64_t>(sorted_test.size());
  const auto lo = std::lower_bound(sorted_test.begin(), sorted_test.end(), x);
  const std::int64_t below = lo - sorted_test.begin();
  if (below < r) on_precedence(below);
  const auto hi = std::upper_bound(lo, sorted_test.end(), x);
  const std::int64_t cell = (hi - sorted_test.begin()) - (n - s) - 1;
  if (cell >= 0) on_exceedance(cell);
}

}  // namespace

Sample::Sample(std::vector<double> observations, std::string label)
    : observations_(std::move(observations)), label_(std::move(label)) {
  if (observations_.empty()) throw InputError("sample '" + label_ + "' is empty");
  for (double v : observations_) {
    if (!std::isfinite(v)) throw InputError("sample '" + label_ + "' has a non-finite value");
  }
}

Orders orders_from_rates(std::int64_t n, double rho1, double rho2) {
  auto order = [n](double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("rates must satisfy 0 <= rho < 1");
    // 1e-9 absorbs representation error such as 0.35 * 20 = 6.999...
    return static_cast<int>(std::floor(rho * static_cast<double>(n) + 1e-9)) + 1;
  };
  Orders out{order(rho1), order(rho2)};
  check_orders(n, out.r, out.s);
  return out;
}

std::int64_t FrequencyVector::precedence_total() const {
  return std::accumulate(precedence.begin(), precedence.end(), std::int64_t{0});
}

std::int64_t FrequencyVector::exceedance_total() const {
  return std::accumulate(exceedance.begin(), exceedance.end(), std::int64_t{0});
}

std::int64_t FrequencyVector::max_precedence() const {
  return precedence.empty() ? 0 : *std::max_element(precedence.begin(), precedence.end());
}

std::int64_t FrequencyVector::max_exceedance() const {
  return exceedance.empty() ? 0 : *std::max_element(exceedance.begin(), exceedance.end());
}

void FrequencyVector::validate() const {
  if (m < 1) throw ParameterError("frequency vector: m must be at least 1");
  check_orders(n, r(), s());
  auto negative = [](std::int64_t v) { return v < 0; };
  if (std::any_of(precedence.begin(), precedence.end(), negative) ||
      std::any_of(exceedance.begin(), exceedance.end(), negative)) {
    throw ParameterError("frequency vector: negative count");
  }
}

FrequencyVector frequency_vector(const Sample& training, const Sample& test, int r, int s) {
  const auto n = static_cast<std::int64_t>(test.size());
  check_orders(n, r, s);
  std::vector<double> sorted_test(test.observations().begin(), test.observations().end());
  std::sort(sorted_test.begin(), sorted_test.end());

  FrequencyVector fv;
  fv.m = static_cast<std::int64_t>(training.size());
  fv.n = n;
  fv.precedence.assign(static_cast<std::size_t>(r), 0);
  fv.exceedance.assign(static_cast<std::size_t>(s), 0);
  for (double x : training.observations()) {
    assign_cells(
        sorted_test, x, r, s, [&](std::int64_t cell) { ++fv.precedence[cell]; },
        [&](std::int64_t cell) { ++fv.exceedance[cell]; });
  }
  return fv;
}

StatisticBundle statistic_bundle(const Sample& training, const Sample& test, int r, int s) {
  const FrequencyVector fv = frequency_vector(training, test, r, s);
  StatisticBundle out;
  out.P = fv.max_precedence();
  out.E = fv.max_exceedance();
  out.T = out.P + out.E;
  out.Q = out.P;
  out.B = fv.precedence_total();

  const auto m = static_cast<std::int64_t>(training.size());
  if (s <= m) {
    std::vector<double> sorted_training(training.observations().begin(),
                                        training.observations().end());
    std::sort(sorted_training.begin(), sorted_training.end());
    const double pivot = sorted_training[static_cast<std::size_t>(m - s)];
    out.A = std::count_if(test.observations().begin(), test.observations().end(),
                          [pivot](double y) { return y > pivot; });
    if (r == s && m == fv.n) out.V = *out.A + out.B;
  }
  return out;
}

bool has_cross_sample_ties(const Sample& training, const Sample& test) {
  std::vector<double> sorted_test(test.observations().begin(), test.observations().end());
  std::sort(sorted_test.begin(), sorted_test.end());
  return std::any_of(training.observations().begin(), training.observations().end(),
                     [&](double x) { return std::binary_search(sorted_test.begin(), sorted_test.end(), x); });
}

FastStatistics evaluate_in_place(std::span<double> training, std::span<double> test, int r, int s,
                                 bool with_v) {
  std::sort(test.begin(), test.end());
  constexpr int kMaxCells = 256;
  std::int64_t precedence[kMaxCells] = {};
  std::int64_t exceedance[kMaxCells] = {};
  std::vector<std::int64_t> heap_p, heap_e;
  std::int64_t* p = precedence;
  std::int64_t* e = exceedance;
  if (r > kMaxCells || s > kMaxCells) {
    heap_p.assign(static_cast<std::size_t>(r), 0);
    heap_e.assign(static_cast<std::size_t>(s), 0);
    p = heap_p.data();
    e = heap_e.data();
  }
  std::int64_t total_precedence = 0;
  for (double x : training) {
    assign_cells(
        test, x, r, s,
        [&](std::int64_t cell) {
          ++p[cell];
          ++total_precedence;
        },
        [&](std::int64_t cell) { ++e[cell]; });
  }
  FastStatistics out;
  out.Q = *std::max_element(p, p + r);
  out.T = out.Q + *std::max_element(e, e + s);
  if (with_v) {
    std::sort(training.begin(), training.end());
    const double pivot = training[training.size() - static_cast<std::size_t>(s)];
    const auto above = test.end() - std::upper_bound(test.begin(), test.end(), pivot);
    out.V = above + total_precedence;
  }
  return out;
}

}  // namespace sidak
