#include "sidak/sidak.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "sidak/error.hpp"
#include "sidak/inference.hpp"
#include "sidak/lehmann.hpp"
#include "sidak/null_dist.hpp"
#include "sidak/statistics.hpp"

struct sidak_null_dist {
  sidak::NullDistribution dist;
};

struct sidak_alt_dist {
  sidak::AlternativeDistribution dist;
};

namespace {

thread_local std::string g_last_error;

template <class F>
sidak_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SIDAK_OK;
  } catch (const sidak::Error& e) {
    g_last_error = e.what();
    return static_cast<sidak_status>(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SIDAK_E_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SIDAK_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SIDAK_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw sidak::ParameterError(std::string(what) + " is null");
}

sidak::Sample to_sample(const double* data, size_t size, const char* label) {
  if (data == nullptr && size > 0) throw sidak::InputError(std::string(label) + " data is null");
  return sidak::Sample(std::vector<double>(data, data + size), label);
}

sidak::Statistic to_statistic(sidak_statistic s) {
  switch (s) {
    case SIDAK_STAT_T: return sidak::Statistic::T;
    case SIDAK_STAT_V: return sidak::Statistic::V;
    case SIDAK_STAT_Q: return sidak::Statistic::Q;
  }
  throw sidak::ParameterError("unknown statistic");
}

sidak::AlternativeSpec to_spec(const sidak_alternative& a) {
  sidak::AlternativeSpec spec;
  switch (a.kind) {
    case SIDAK_ALT_LEHMANN: {
      sidak::LehmannAlternative l{a.parameter};
      if (a.exponential_baseline) l.baseline = sidak::LehmannAlternative::Baseline::exponential;
      spec.kind = l;
      break;
    }
    case SIDAK_ALT_EXPONENTIAL:
      spec.kind = sidak::ExponentialAlternative{a.parameter};
      break;
    case SIDAK_ALT_WEIBULL:
      spec.kind = sidak::WeibullAlternative{a.shape, a.parameter};
      break;
    default:
      throw sidak::ParameterError("unknown alternative kind");
  }
  spec.varied = a.vary_training ? sidak::VariedGroup::training : sidak::VariedGroup::test;
  spec.validate();
  return spec;
}

sidak_critical_value to_c(const sidak::CriticalValue& cv) { return {cv.c, cv.alpha1, cv.alpha2}; }

sidak::CriticalValue from_c(const sidak_critical_value& cv) {
  sidak::CriticalValue out;
  out.c = cv.c;
  out.alpha1 = cv.alpha1;
  out.alpha2 = cv.alpha2;
  return out;
}

sidak_power to_c(const sidak::PowerEstimate& e) {
  return {e.power, e.std_error, to_c(e.critical), e.reps};
}

}  // namespace

extern "C" {

const char* sidak_last_error(void) { return g_last_error.c_str(); }

const char* sidak_version(void) { return "1.0.0"; }

sidak_status sidak_statistics_compute(const double* training, size_t m, const double* test, size_t n,
                                      int r, int s, sidak_statistics* out, int64_t* precedence,
                                      int64_t* exceedance) {
  return guarded([&] {
    require(out, "out");
    const sidak::Sample x = to_sample(training, m, "training");
    const sidak::Sample y = to_sample(test, n, "test");
    const sidak::StatisticBundle b = sidak::statistic_bundle(x, y, r, s);
    *out = {b.P, b.E, b.T, b.Q, b.B, b.A.value_or(0), b.V.value_or(0), b.A.has_value(), b.V.has_value()};
    if (precedence != nullptr || exceedance != nullptr) {
      const sidak::FrequencyVector fv = sidak::frequency_vector(x, y, r, s);
      if (precedence != nullptr) std::copy(fv.precedence.begin(), fv.precedence.end(), precedence);
      if (exceedance != nullptr) std::copy(fv.exceedance.begin(), fv.exceedance.end(), exceedance);
    }
  });
}

sidak_status sidak_has_ties(const double* training, size_t m, const double* test, size_t n, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = sidak::has_cross_sample_ties(to_sample(training, m, "training"), to_sample(test, n, "test"));
  });
}

sidak_status sidak_orders_from_rates(int64_t n, double rho1, double rho2, int* r, int* s) {
  return guarded([&] {
    require(r, "r");
    require(s, "s");
    const sidak::Orders o = sidak::orders_from_rates(n, rho1, rho2);
    *r = o.r;
    *s = o.s;
  });
}

sidak_status sidak_null_dist_create(int64_t m, int64_t n, int64_t r, int64_t s, sidak_null_dist** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sidak_null_dist{sidak::null_distribution(m, n, r, s)};
  });
}

sidak_status sidak_null_dist_brute_force(int64_t m, int64_t n, int64_t r, int64_t s,
                                         sidak_null_dist** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sidak_null_dist{sidak::brute_force_null_distribution(m, n, r, s)};
  });
}

void sidak_null_dist_free(sidak_null_dist* dist) { delete dist; }

int64_t sidak_null_dist_max(const sidak_null_dist* dist) { return dist ? dist->dist.m() : -1; }

sidak_status sidak_null_dist_pmf(const sidak_null_dist* dist, int64_t t, double* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = dist->dist.pmf_value(t);
  });
}

sidak_status sidak_null_dist_cdf(const sidak_null_dist* dist, int64_t t, double* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = dist->dist.cdf_value(t);
  });
}

sidak_status sidak_null_dist_upper_tail(const sidak_null_dist* dist, int64_t t, double* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = dist->dist.upper_tail_value(t);
  });
}

sidak_status sidak_null_dist_decimal(const sidak_null_dist* dist, int which, int64_t t, int digits,
                                     char* buf, size_t buflen) {
  return guarded([&] {
    require(dist, "dist");
    require(buf, "buf");
    if (digits < 0 || digits > 1000) throw sidak::ParameterError("digits must lie in [0, 1000]");
    sidak::Rational q;
    switch (which) {
      case 0: q = dist->dist.pmf(t); break;
      case 1: q = dist->dist.cdf(t); break;
      case 2: q = dist->dist.upper_tail(t); break;
      default: throw sidak::ParameterError("which must be 0 (pmf), 1 (cdf) or 2 (upper tail)");
    }
    const std::string text = sidak::to_decimal_string(q, digits);
    if (text.size() + 1 > buflen) throw sidak::ParameterError("buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

int sidak_null_dist_equal(const sidak_null_dist* a, const sidak_null_dist* b) {
  if (a == nullptr || b == nullptr) return 0;
  return a->dist == b->dist ? 1 : 0;
}

sidak_status sidak_asymptotic_null_cdf(int64_t r, int64_t s, int64_t t, int64_t max_total, double* out) {
  return guarded([&] {
    require(out, "out");
    const int64_t cap = max_total > 0 ? max_total : sidak::default_asymptotic_truncation(r, s);
    *out = sidak::asymptotic_null_cdf(r, s, t, cap);
  });
}

int64_t sidak_default_asymptotic_truncation(int64_t r, int64_t s) {
  int64_t cap = -1;
  guarded([&] { cap = sidak::default_asymptotic_truncation(r, s); });
  return cap;
}

sidak_status sidak_critical_value_exact(int64_t m, int64_t n, int64_t r, int64_t s, double alpha,
                                        sidak_critical_value* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(sidak::critical_value(m, n, r, s, alpha));
  });
}

sidak_status sidak_critical_value_mc(int64_t m, int64_t n, int64_t r, int64_t s, double alpha,
                                     sidak_statistic statistic, int64_t reps, uint64_t seed,
                                     uint64_t stream, unsigned threads, sidak_critical_value* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(sidak::calibrate_critical_value(m, n, r, s, alpha, to_statistic(statistic), reps, seed,
                                                stream, threads));
  });
}

sidak_status sidak_randomized_decision(int64_t t_observed, const sidak_critical_value* cv, double alpha,
                                       uint64_t seed, uint64_t stream, sidak_decision* out) {
  return guarded([&] {
    require(cv, "cv");
    require(out, "out");
    sidak::SeededRng rng(seed, stream);
    const sidak::RandomizedDecision d = sidak::randomized_decision(t_observed, from_c(*cv), alpha, rng);
    sidak_outcome outcome = SIDAK_ACCEPT;
    if (d.outcome == sidak::RandomizedDecision::Outcome::reject) outcome = SIDAK_REJECT;
    if (d.outcome == sidak::RandomizedDecision::Outcome::randomized) outcome = SIDAK_RANDOMIZED;
    *out = {outcome, d.rejected ? 1 : 0, d.phi, d.draw};
  });
}

sidak_status sidak_alt_dist_create(int64_t m, int64_t n, int64_t r, int64_t s, double gamma, double budget,
                                   sidak_alt_dist** out) {
  return guarded([&] {
    require(out, "out");
    sidak::LehmannOptions options;
    if (budget > 0) options.budget = budget;
    *out = new sidak_alt_dist{sidak::alternative_distribution(m, n, r, s, {gamma}, options)};
  });
}

void sidak_alt_dist_free(sidak_alt_dist* dist) { delete dist; }

sidak_status sidak_alt_dist_pmf(const sidak_alt_dist* dist, int64_t t, double* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    const auto& pmf = dist->dist.pmf;
    *out = (t < 0 || t >= static_cast<int64_t>(pmf.size())) ? 0.0 : pmf[static_cast<size_t>(t)];
  });
}

double sidak_alt_dist_mass(const sidak_alt_dist* dist) { return dist ? dist->dist.mass : std::nan(""); }

sidak_status sidak_exact_power(int64_t m, int64_t n, int64_t r, int64_t s, double gamma, double alpha,
                               double budget, double* out) {
  return guarded([&] {
    require(out, "out");
    sidak::LehmannOptions options;
    if (budget > 0) options.budget = budget;
    *out = sidak::exact_power(m, n, r, s, {gamma}, alpha, options);
  });
}

sidak_power_options sidak_power_options_default(void) {
  const sidak::PowerOptions d;
  return {d.reps, d.seed, d.stream, d.threads, d.calibration_reps};
}

sidak_status sidak_mc_power(int64_t m, int64_t n, int64_t r, int64_t s, double alpha,
                            const sidak_alternative* alternative, sidak_statistic statistic,
                            const sidak_power_options* options, sidak_power* out) {
  return guarded([&] {
    require(alternative, "alternative");
    require(out, "out");
    sidak::PowerOptions opts;
    if (options != nullptr) {
      opts.reps = options->reps;
      opts.seed = options->seed;
      opts.stream = options->stream;
      opts.threads = options->threads;
      opts.calibration_reps = options->calibration_reps;
    }
    *out = to_c(sidak::mc_power(m, n, r, s, alpha, to_spec(*alternative), to_statistic(statistic), opts));
  });
}

sidak_status sidak_table_experiment(const sidak_power_cell* cells, size_t count, double alpha, int64_t reps,
                                    uint64_t seed, unsigned threads, int64_t calibration_reps,
                                    sidak_power* out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(cells, "cells");
    std::vector<sidak::PowerCell> grid;
    grid.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      const sidak_power_cell& c = cells[k];
      grid.push_back({c.m, c.n, c.r, c.s, to_spec(c.alternative), to_statistic(c.statistic)});
    }
    const auto rows = sidak::table_experiment(grid, alpha, reps, seed, threads, calibration_reps);
    for (size_t k = 0; k < rows.size(); ++k) out[k] = to_c(rows[k].estimate);
  });
}

}  // extern "C"
