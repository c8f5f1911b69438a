#include "sidak/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>
#include <type_traits>

#include "sidak/error.hpp"

namespace sidak {

namespace {

// Calibration draws come from a stream disjoint from the power draws.
constexpr std::uint64_t kCalibrationStreamBit = 0x8000000000000000ull;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs work(block, count) over ceil(reps / kReplicateBlock) blocks on a pool
// of threads. Results come back indexed by block so any merge in block order
// is independent of scheduling.
template <class Result, class Work>
std::vector<Result> run_blocks(std::int64_t reps, unsigned threads, Work&& work) {
  const std::int64_t blocks = (reps + kReplicateBlock - 1) / kReplicateBlock;
  std::vector<Result> results(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t b = next++; b < blocks; b = next++) {
      const std::int64_t count = std::min(kReplicateBlock, reps - b * kReplicateBlock);
      results[b] = work(b, count);
    }
  };
  const unsigned pool = std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(blocks, 1));
  if (pool <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> workers;
  workers.reserve(pool);
  for (unsigned t = 0; t < pool; ++t) workers.emplace_back(worker);
  for (auto& w : workers) w.join();
  return results;
}

double from_baseline(double u, LehmannAlternative::Baseline baseline) {
  return baseline == LehmannAlternative::Baseline::uniform ? u : -std::log1p(-u);
}

void draw_pair(const AlternativeSpec& spec, SeededRng& rng, std::span<double> training,
               std::span<double> test) {
  std::span<double> varied_group = spec.varied == VariedGroup::test ? test : training;

  std::visit(
      [&](const auto& alt) {
        using Alt = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<Alt, LehmannAlternative>) {
          const double exponent = 1.0 / alt.gamma;
          for (double& v : training) v = rng.uniform();
          for (double& v : test) v = rng.uniform();
          for (double& v : varied_group) v = std::pow(v, exponent);
          if (alt.baseline != LehmannAlternative::Baseline::uniform) {
            for (double& v : training) v = from_baseline(v, alt.baseline);
            for (double& v : test) v = from_baseline(v, alt.baseline);
          }
        } else if constexpr (std::is_same_v<Alt, ExponentialAlternative>) {
          for (double& v : training) v = -std::log(rng.uniform());
          for (double& v : test) v = -std::log(rng.uniform());
          for (double& v : varied_group) v /= alt.rate;
        } else {
          const double exponent = 1.0 / alt.shape;
          for (double& v : training) v = std::pow(-std::log(rng.uniform()), exponent);
          for (double& v : test) v = std::pow(-std::log(rng.uniform()), exponent);
          for (double& v : varied_group) v *= alt.scale;
        }
      },
      spec.kind);
}

void check_power_request(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                         Statistic statistic) {
  validate_design(m, n, r, s);
  if (statistic == Statistic::V && (r != s || m != n)) {
    throw ParameterError("the V statistic is defined only for r = s and m = n");
  }
}

// Histogram of the statistic under H0 (both groups uniform).
std::vector<double> simulated_null_tail(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                                        Statistic statistic, std::int64_t reps, std::uint64_t seed,
                                        std::uint64_t stream, unsigned threads) {
  const auto support = static_cast<std::size_t>(m + n + 2);
  const AlternativeSpec null_spec = lehmann(1.0);
  auto blocks = run_blocks<std::vector<std::int64_t>>(reps, threads, [&](std::int64_t block, std::int64_t count) {
    SeededRng rng(seed, stream, static_cast<std::uint64_t>(block));
    std::vector<double> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(n));
    std::vector<std::int64_t> hist(support, 0);
    for (std::int64_t k = 0; k < count; ++k) {
      draw_pair(null_spec, rng, x, y);
      const FastStatistics st =
          evaluate_in_place(x, y, static_cast<int>(r), static_cast<int>(s), statistic == Statistic::V);
      const std::int64_t value = statistic == Statistic::T ? st.T : statistic == Statistic::Q ? st.Q : st.V;
      ++hist[static_cast<std::size_t>(value)];
    }
    return hist;
  });
  std::vector<std::int64_t> hist(support, 0);
  for (const auto& h : blocks) {
    for (std::size_t k = 0; k < support; ++k) hist[k] += h[k];
  }
  std::vector<double> tail(support + 1, 0.0);
  std::int64_t acc = 0;
  for (std::size_t k = support; k-- > 0;) {
    acc += hist[k];
    tail[k] = static_cast<double>(acc) / static_cast<double>(reps);
  }
  return tail;
}

}  // namespace

std::string to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::T: return "T";
    case Statistic::V: return "V";
    case Statistic::Q: return "Q";
  }
  return "?";
}

Statistic statistic_from_string(const std::string& name) {
  if (name == "T" || name == "t") return Statistic::T;
  if (name == "V" || name == "v") return Statistic::V;
  if (name == "Q" || name == "q") return Statistic::Q;
  throw ParameterError("unknown statistic '" + name + "' (expected T, V or Q)");
}

std::string to_string(RandomizedDecision::Outcome outcome) {
  switch (outcome) {
    case RandomizedDecision::Outcome::reject: return "reject";
    case RandomizedDecision::Outcome::accept: return "accept";
    case RandomizedDecision::Outcome::randomized: return "randomized";
  }
  return "?";
}

void AlternativeSpec::validate() const {
  std::visit(
      [](const auto& alt) {
        using Alt = std::decay_t<decltype(alt)>;
        auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
        if constexpr (std::is_same_v<Alt, LehmannAlternative>) {
          if (!positive(alt.gamma)) throw ParameterError("gamma must be positive");
        } else if constexpr (std::is_same_v<Alt, ExponentialAlternative>) {
          if (!positive(alt.rate)) throw ParameterError("rate must be positive");
        } else {
          if (!positive(alt.shape) || !positive(alt.scale)) {
            throw ParameterError("Weibull shape and scale must be positive");
          }
        }
      },
      kind);
}

double AlternativeSpec::parameter() const {
  return std::visit(
      [](const auto& alt) -> double {
        using Alt = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<Alt, LehmannAlternative>) {
          return alt.gamma;
        } else if constexpr (std::is_same_v<Alt, ExponentialAlternative>) {
          return alt.rate;
        } else {
          return alt.scale;
        }
      },
      kind);
}

std::string AlternativeSpec::describe() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& alt) {
        using Alt = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<Alt, LehmannAlternative>) {
          out << "lehmann";
        } else if constexpr (std::is_same_v<Alt, ExponentialAlternative>) {
          out << "exponential";
        } else {
          out << "weibull(shape=" << alt.shape << ")";
        }
      },
      kind);
  return out.str();
}

AlternativeSpec lehmann(double gamma) { return AlternativeSpec{LehmannAlternative{gamma}}; }

CriticalValue critical_value(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                             double alpha, const CriticalValueRequest& request) {
  validate_design(m, n, r, s);
  check_alpha(alpha);
  if (request.method == CriticalMethod::exact) {
    return exact_critical_value(null_distribution(m, n, r, s), alpha);
  }
  return calibrate_critical_value(m, n, r, s, alpha, Statistic::T, request.reps, request.seed,
                                  request.stream, request.threads);
}

CriticalValue calibrate_critical_value(std::int64_t m, std::int64_t n, std::int64_t r,
                                       std::int64_t s, double alpha, Statistic statistic,
                                       std::int64_t reps, std::uint64_t seed, std::uint64_t stream,
                                       unsigned threads) {
  check_power_request(m, n, r, s, statistic);
  check_alpha(alpha);
  if (reps < 10'000) throw ParameterError("Monte-Carlo calibration needs at least 10^4 replicates");
  const std::vector<double> tail = simulated_null_tail(m, n, r, s, statistic, reps, seed, stream, threads);
  return critical_value_from_tail(tail, alpha);
}

double rejection_probability(std::int64_t t_observed, const CriticalValue& cv, double alpha) {
  if (t_observed >= cv.c) return 1.0;
  if (t_observed == cv.c - 1) return (alpha - cv.alpha1) / (cv.alpha2 - cv.alpha1);
  return 0.0;
}

RandomizedDecision randomized_decision(std::int64_t t_observed, const CriticalValue& cv, double alpha,
                                       SeededRng& rng) {
  check_alpha(alpha);
  if (!(cv.alpha1 <= alpha && alpha <= cv.alpha2)) {
    throw ParameterError("randomized decision requires alpha1 <= alpha <= alpha2");
  }
  RandomizedDecision d;
  d.c = cv.c;
  d.alpha1 = cv.alpha1;
  d.alpha2 = cv.alpha2;
  d.t_observed = t_observed;
  d.draw = std::numeric_limits<double>::quiet_NaN();
  d.phi = rejection_probability(t_observed, cv, alpha);
  if (t_observed >= cv.c) {
    d.outcome = RandomizedDecision::Outcome::reject;
    d.rejected = true;
  } else if (t_observed == cv.c - 1) {
    d.outcome = RandomizedDecision::Outcome::randomized;
    d.draw = rng.uniform();
    d.rejected = d.draw < d.phi;
  } else {
    d.outcome = RandomizedDecision::Outcome::accept;
    d.rejected = false;
  }
  return d;
}

std::pair<Sample, Sample> sample_pair(std::int64_t m, std::int64_t n, const AlternativeSpec& spec,
                                      SeededRng& rng) {
  if (m < 1 || n < 1) throw ParameterError("sample sizes must be positive");
  spec.validate();
  std::vector<double> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(n));
  draw_pair(spec, rng, x, y);
  return {Sample(std::move(x), "training"), Sample(std::move(y), "test")};
}

PowerEstimate mc_power(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s, double alpha,
                       const AlternativeSpec& spec, Statistic statistic, const PowerOptions& options) {
  check_power_request(m, n, r, s, statistic);
  check_alpha(alpha);
  spec.validate();
  if (options.reps < 1000) throw ParameterError("Monte-Carlo power needs at least 10^3 replicates");

  PowerEstimate out;
  out.reps = options.reps;
  if (statistic == Statistic::T) {
    out.critical = exact_critical_value(null_distribution(m, n, r, s), alpha);
  } else {
    out.critical = calibrate_critical_value(m, n, r, s, alpha, statistic, options.calibration_reps,
                                            options.seed, options.stream | kCalibrationStreamBit,
                                            options.threads);
  }
  const CriticalValue cv = out.critical;

  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  auto blocks = run_blocks<Moments>(options.reps, options.threads, [&](std::int64_t block, std::int64_t count) {
    SeededRng rng(options.seed, options.stream, static_cast<std::uint64_t>(block));
    std::vector<double> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(n));
    Moments mom;
    for (std::int64_t k = 0; k < count; ++k) {
      draw_pair(spec, rng, x, y);
      const FastStatistics st =
          evaluate_in_place(x, y, static_cast<int>(r), static_cast<int>(s), statistic == Statistic::V);
      const std::int64_t value = statistic == Statistic::T ? st.T : statistic == Statistic::Q ? st.Q : st.V;
      const double phi = rejection_probability(value, cv, alpha);
      mom.sum += phi;
      mom.sum_sq += phi * phi;
    }
    return mom;
  });
  Moments total;
  for (const auto& b : blocks) {
    total.sum += b.sum;
    total.sum_sq += b.sum_sq;
  }
  const auto reps = static_cast<double>(options.reps);
  out.power = total.sum / reps;
  const double variance = std::max(0.0, (total.sum_sq - reps * out.power * out.power) / (reps - 1.0));
  out.std_error = std::sqrt(variance / reps);
  return out;
}

std::vector<PowerRow> table_experiment(const std::vector<PowerCell>& grid, double alpha,
                                       std::int64_t reps, std::uint64_t seed, unsigned threads,
                                       std::int64_t calibration_reps) {
  if (grid.empty()) throw ParameterError("power grid is empty");
  std::vector<PowerRow> rows;
  rows.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PowerCell& cell = grid[k];
    PowerOptions options;
    options.reps = reps;
    options.seed = seed;
    options.stream = k;
    options.threads = threads;
    options.calibration_reps = calibration_reps;
    rows.push_back({cell, mc_power(cell.m, cell.n, cell.r, cell.s, alpha, cell.spec, cell.statistic, options)});
  }
  return rows;
}

}  // namespace sidak
