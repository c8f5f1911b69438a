#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sidak/null_dist.hpp"
#include "sidak/rng.hpp"
#include "sidak/statistics.hpp"

namespace sidak {

enum class Statistic { T, V, Q };

std::string to_string(Statistic statistic);
Statistic statistic_from_string(const std::string& name);

/// Lehmann alternative: the varied group has cdf F^gamma. The baseline F is
/// uniform or unit exponential; the tests are rank based so the choice only
/// matters as a check.
struct LehmannAlternative {
  enum class Baseline { uniform, exponential };
  double gamma = 1.0;
  Baseline baseline = Baseline::uniform;
};

/// Baseline Exp(1) against Exp(rate).
struct ExponentialAlternative {
  double rate = 1.0;
};

/// Baseline Weibull(shape, 1) against Weibull(shape, scale).
struct WeibullAlternative {
  double shape = 1.0;
  double scale = 1.0;
};

enum class VariedGroup { test, training };

struct AlternativeSpec {
  std::variant<LehmannAlternative, ExponentialAlternative, WeibullAlternative> kind;
  /// Which group carries the varied parameter; the other draws from the
  /// baseline distribution.
  VariedGroup varied = VariedGroup::test;

  void validate() const;
  /// The varied parameter (gamma, rate or scale).
  double parameter() const;
  std::string describe() const;
};

AlternativeSpec lehmann(double gamma);

enum class CriticalMethod { exact, monte_carlo };

struct CriticalValueRequest {
  CriticalMethod method = CriticalMethod::exact;
  std::int64_t reps = 100'000;  // monte_carlo only; at least 10^4
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Critical value of the T test from the exact null distribution or from a
/// null simulation.
CriticalValue critical_value(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                             double alpha, const CriticalValueRequest& request = {});

/// Critical value of any statistic calibrated by simulation under H0.
CriticalValue calibrate_critical_value(std::int64_t m, std::int64_t n, std::int64_t r,
                                       std::int64_t s, double alpha, Statistic statistic,
                                       std::int64_t reps, std::uint64_t seed, std::uint64_t stream,
                                       unsigned threads = 0);

struct RandomizedDecision {
  enum class Outcome { reject, accept, randomized };

  std::int64_t c = 0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double phi = 0.0;
  Outcome outcome = Outcome::accept;
  /// Realized decision; for a randomized outcome, draw < phi.
  bool rejected = false;
  /// Uniform draw used when outcome is randomized, NaN otherwise.
  double draw = 0.0;
  std::int64_t t_observed = 0;
};

std::string to_string(RandomizedDecision::Outcome outcome);

/// phi = 1 for t >= c, (alpha - alpha1) / (alpha2 - alpha1) for t = c - 1,
/// 0 otherwise. Draws from rng only for the randomized branch.
double rejection_probability(std::int64_t t_observed, const CriticalValue& cv, double alpha);

RandomizedDecision randomized_decision(std::int64_t t_observed, const CriticalValue& cv, double alpha,
                                       SeededRng& rng);

/// (training, test) samples of sizes m and n under the alternative.
std::pair<Sample, Sample> sample_pair(std::int64_t m, std::int64_t n, const AlternativeSpec& spec,
                                      SeededRng& rng);

struct PowerOptions {
  std::int64_t reps = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  unsigned threads = 0;
  /// Null replicates used to calibrate V and Q.
  std::int64_t calibration_reps = 1'000'000;
};

struct PowerEstimate {
  double power = 0.0;
  double std_error = 0.0;
  CriticalValue critical;
  std::int64_t reps = 0;
};

/// Monte-Carlo E(Phi | H1). T uses exact critical values; V and Q use
/// critical values calibrated on the null with the same seed.
PowerEstimate mc_power(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s, double alpha,
                       const AlternativeSpec& spec, Statistic statistic,
                       const PowerOptions& options = {});

struct PowerCell {
  std::int64_t m = 10, n = 10, r = 1, s = 1;
  AlternativeSpec spec = lehmann(1.0);
  Statistic statistic = Statistic::T;
};

struct PowerRow {
  PowerCell cell;
  PowerEstimate estimate;
};

/// Runs mc_power over a grid. Cell k uses stream k, so rows do not depend on
/// thread count.
std::vector<PowerRow> table_experiment(const std::vector<PowerCell>& grid, double alpha,
                                       std::int64_t reps, std::uint64_t seed, unsigned threads = 0,
                                       std::int64_t calibration_reps = 1'000'000);

/// Replicates per independent random block.
inline constexpr std::int64_t kReplicateBlock = 1024;

}  // namespace sidak
