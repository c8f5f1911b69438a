#ifndef SIDAK_SIDAK_H
#define SIDAK_SIDAK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SIDAK_BUILDING_LIBRARY)
#    define SIDAK_API __declspec(dllexport)
#  else
#    define SIDAK_API __declspec(dllimport)
#  endif
#else
#  define SIDAK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum sidak_status {
  SIDAK_OK = 0,
  SIDAK_E_INTERNAL = 1,
  SIDAK_E_INPUT = 2,
  SIDAK_E_PARAMETER = 3,
  SIDAK_E_BUDGET = 4
} sidak_status;

typedef enum sidak_statistic {
  SIDAK_STAT_T = 0,
  SIDAK_STAT_V = 1,
  SIDAK_STAT_Q = 2
} sidak_statistic;

typedef enum sidak_alternative_kind {
  SIDAK_ALT_LEHMANN = 0,
  SIDAK_ALT_EXPONENTIAL = 1,
  SIDAK_ALT_WEIBULL = 2
} sidak_alternative_kind;

typedef enum sidak_outcome {
  SIDAK_ACCEPT = 0,
  SIDAK_REJECT = 1,
  SIDAK_RANDOMIZED = 2
} sidak_outcome;

typedef struct sidak_null_dist sidak_null_dist;
typedef struct sidak_alt_dist sidak_alt_dist;

/* Message of the last failing call on this thread; empty after success. */
SIDAK_API const char* sidak_last_error(void);
SIDAK_API const char* sidak_version(void);

/* ---- statistics ---- */

typedef struct sidak_statistics {
  int64_t P, E, T, Q, B;
  int64_t A; /* valid when has_A */
  int64_t V; /* valid when has_V (r == s and m == n) */
  int has_A;
  int has_V;
} sidak_statistics;

/* precedence and exceedance may be NULL; otherwise they receive r and s
   cell counts. */
SIDAK_API sidak_status sidak_statistics_compute(const double* training, size_t m, const double* test,
                                                size_t n, int r, int s, sidak_statistics* out,
                                                int64_t* precedence, int64_t* exceedance);

/* *out = 1 if a training value equals a test value. */
SIDAK_API sidak_status sidak_has_ties(const double* training, size_t m, const double* test, size_t n,
                                      int* out);

/* r = floor(rho1 n) + 1, s = floor(rho2 n) + 1. */
SIDAK_API sidak_status sidak_orders_from_rates(int64_t n, double rho1, double rho2, int* r, int* s);

/* ---- exact null distribution ---- */

SIDAK_API sidak_status sidak_null_dist_create(int64_t m, int64_t n, int64_t r, int64_t s,
                                              sidak_null_dist** out);
SIDAK_API sidak_status sidak_null_dist_brute_force(int64_t m, int64_t n, int64_t r, int64_t s,
                                                   sidak_null_dist** out);
SIDAK_API void sidak_null_dist_free(sidak_null_dist* dist);

/* Largest support point (m). */
SIDAK_API int64_t sidak_null_dist_max(const sidak_null_dist* dist);
SIDAK_API sidak_status sidak_null_dist_pmf(const sidak_null_dist* dist, int64_t t, double* out);
SIDAK_API sidak_status sidak_null_dist_cdf(const sidak_null_dist* dist, int64_t t, double* out);
SIDAK_API sidak_status sidak_null_dist_upper_tail(const sidak_null_dist* dist, int64_t t, double* out);

/* Exact values rounded to `digits` decimals. which: 0 pmf, 1 cdf,
   2 upper tail. Fails with SIDAK_E_PARAMETER if buf is too small. */
SIDAK_API sidak_status sidak_null_dist_decimal(const sidak_null_dist* dist, int which, int64_t t,
                                               int digits, char* buf, size_t buflen);

/* 1 when both hold identical interleaving counts. */
SIDAK_API int sidak_null_dist_equal(const sidak_null_dist* a, const sidak_null_dist* b);

SIDAK_API sidak_status sidak_asymptotic_null_cdf(int64_t r, int64_t s, int64_t t, int64_t max_total,
                                                 double* out);
SIDAK_API int64_t sidak_default_asymptotic_truncation(int64_t r, int64_t s);

/* ---- critical values and decisions ---- */

typedef struct sidak_critical_value {
  int64_t c;
  double alpha1; /* P[S >= c] */
  double alpha2; /* P[S >= c - 1] */
} sidak_critical_value;

SIDAK_API sidak_status sidak_critical_value_exact(int64_t m, int64_t n, int64_t r, int64_t s, double alpha,
                                                  sidak_critical_value* out);

/* Null simulation; reps >= 10^4. threads = 0 uses hardware concurrency. */
SIDAK_API sidak_status sidak_critical_value_mc(int64_t m, int64_t n, int64_t r, int64_t s, double alpha,
                                               sidak_statistic statistic, int64_t reps, uint64_t seed,
                                               uint64_t stream, unsigned threads,
                                               sidak_critical_value* out);

typedef struct sidak_decision {
  sidak_outcome outcome;
  int rejected;
  double phi;
  double draw; /* NaN unless outcome is SIDAK_RANDOMIZED */
} sidak_decision;

SIDAK_API sidak_status sidak_randomized_decision(int64_t t_observed, const sidak_critical_value* cv,
                                                 double alpha, uint64_t seed, uint64_t stream,
                                                 sidak_decision* out);

/* ---- Lehmann alternative ---- */

SIDAK_API sidak_status sidak_alt_dist_create(int64_t m, int64_t n, int64_t r, int64_t s, double gamma,
                                             double budget, sidak_alt_dist** out);
SIDAK_API void sidak_alt_dist_free(sidak_alt_dist* dist);
SIDAK_API sidak_status sidak_alt_dist_pmf(const sidak_alt_dist* dist, int64_t t, double* out);
SIDAK_API double sidak_alt_dist_mass(const sidak_alt_dist* dist);

SIDAK_API sidak_status sidak_exact_power(int64_t m, int64_t n, int64_t r, int64_t s, double gamma,
                                         double alpha, double budget, double* out);

/* ---- simulation ---- */

typedef struct sidak_alternative {
  sidak_alternative_kind kind;
  double parameter;         /* gamma, rate or Weibull scale */
  double shape;             /* Weibull only */
  int vary_training;        /* 0: the test group carries the parameter */
  int exponential_baseline; /* Lehmann only */
} sidak_alternative;

typedef struct sidak_power {
  double power;
  double std_error;
  sidak_critical_value critical;
  int64_t reps;
} sidak_power;

typedef struct sidak_power_options {
  int64_t reps;
  uint64_t seed;
  uint64_t stream;
  unsigned threads;
  int64_t calibration_reps;
} sidak_power_options;

SIDAK_API sidak_power_options sidak_power_options_default(void);

SIDAK_API sidak_status sidak_mc_power(int64_t m, int64_t n, int64_t r, int64_t s, double alpha,
                                      const sidak_alternative* alternative, sidak_statistic statistic,
                                      const sidak_power_options* options, sidak_power* out);

typedef struct sidak_power_cell {
  int64_t m, n, r, s;
  sidak_alternative alternative;
  sidak_statistic statistic;
} sidak_power_cell;

/* Cell k uses stream k; out holds `count` results. */
SIDAK_API sidak_status sidak_table_experiment(const sidak_power_cell* cells, size_t count, double alpha,
                                              int64_t reps, uint64_t seed, unsigned threads,
                                              int64_t calibration_reps, sidak_power* out);

#ifdef __cplusplus
}
#endif

#endif
