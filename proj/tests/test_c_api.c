/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "sidak/sidak.h"

static int failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: CHECK failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void test_statistics(void) {
  const double x[] = {32.0, 35.4, 36.2, 39.8, 41.2, 43.3, 45.5, 46.0, 46.2, 46.4,
                      46.5, 46.8, 47.3, 47.3, 47.6, 49.2, 50.4, 50.9, 52.4, 56.3};
  const double y[] = {39.4, 45.3, 49.2, 49.4, 51.3, 52.0, 53.2, 53.2, 54.9, 55.5,
                      57.1, 57.2, 57.5, 59.2, 61.0, 62.4, 63.8, 64.3, 67.3, 67.7};
  sidak_statistics st;
  int64_t pre[3], exc[3];
  CHECK(sidak_statistics_compute(x, 20, y, 20, 3, 3, &st, pre, exc) == SIDAK_OK);
  CHECK(st.T == 10);
  CHECK(st.has_V && st.V == 32);
  CHECK(pre[0] == 3 && pre[1] == 3 && pre[2] == 10);
  CHECK(exc[0] == 0 && exc[1] == 0 && exc[2] == 0);

  int ties = 0;
  CHECK(sidak_has_ties(x, 20, y, 20, &ties) == SIDAK_OK && ties == 1);

  CHECK(sidak_statistics_compute(x, 20, y, 20, 15, 15, &st, NULL, NULL) == SIDAK_E_PARAMETER);
  CHECK(strlen(sidak_last_error()) > 0);
  CHECK(sidak_statistics_compute(x, 0, y, 20, 1, 1, &st, NULL, NULL) == SIDAK_E_INPUT);
  CHECK(sidak_statistics_compute(x, 20, y, 20, 1, 1, &st, NULL, NULL) == SIDAK_OK);
  CHECK(strlen(sidak_last_error()) == 0);

  int r = 0, s = 0;
  CHECK(sidak_orders_from_rates(20, 0.1, 0.25, &r, &s) == SIDAK_OK && r == 3 && s == 6);
}

static void test_null(void) {
  sidak_null_dist* d = NULL;
  sidak_null_dist* b = NULL;
  char buf[64];
  double v = 0;
  CHECK(sidak_null_dist_create(1, 2, 1, 1, &d) == SIDAK_OK);
  CHECK(sidak_null_dist_max(d) == 1);
  CHECK(sidak_null_dist_decimal(d, 0, 0, 15, buf, sizeof buf) == SIDAK_OK);
  CHECK(strcmp(buf, "0.333333333333333") == 0);
  CHECK(sidak_null_dist_decimal(d, 1, 1, 3, buf, sizeof buf) == SIDAK_OK);
  CHECK(strcmp(buf, "1.000") == 0);
  CHECK(sidak_null_dist_decimal(d, 0, 0, 15, buf, 4) == SIDAK_E_PARAMETER);
  CHECK(sidak_null_dist_upper_tail(d, 1, &v) == SIDAK_OK && fabs(v - 2.0 / 3.0) < 1e-15);
  CHECK(sidak_null_dist_brute_force(1, 2, 1, 1, &b) == SIDAK_OK);
  CHECK(sidak_null_dist_equal(d, b) == 1);
  sidak_null_dist_free(d);
  sidak_null_dist_free(b);

  CHECK(sidak_null_dist_create(5, 3, 2, 2, &d) == SIDAK_E_PARAMETER);
  CHECK(sidak_null_dist_brute_force(30, 30, 1, 1, &d) == SIDAK_E_BUDGET);

  CHECK(sidak_asymptotic_null_cdf(2, 2, 0, 0, &v) == SIDAK_OK && fabs(v - 0.0625) < 1e-3);
  CHECK(sidak_default_asymptotic_truncation(2, 2) >= 40);
}

static void test_decisions(void) {
  sidak_critical_value cv;
  sidak_decision dec;
  CHECK(sidak_critical_value_exact(10, 10, 1, 1, 0.05, &cv) == SIDAK_OK && cv.c == 6);
  CHECK(sidak_randomized_decision(6, &cv, 0.05, 1, 0, &dec) == SIDAK_OK);
  CHECK(dec.outcome == SIDAK_REJECT && dec.rejected && isnan(dec.draw));
  CHECK(sidak_randomized_decision(5, &cv, 0.05, 1, 0, &dec) == SIDAK_OK);
  CHECK(dec.outcome == SIDAK_RANDOMIZED && dec.phi > 0 && dec.phi < 1);
  CHECK(sidak_critical_value_exact(10, 10, 1, 1, 1.5, &cv) == SIDAK_E_PARAMETER);
  CHECK(sidak_critical_value_mc(10, 10, 1, 1, 0.05, SIDAK_STAT_T, 20000, 1, 0, 1, &cv) == SIDAK_OK);
  CHECK(cv.c == 6);
}

static void test_alternative(void) {
  sidak_alt_dist* a = NULL;
  double p = 0, total = 0, power = 0;
  int64_t t;
  CHECK(sidak_alt_dist_create(6, 6, 2, 2, 2.0, 0, &a) == SIDAK_OK);
  for (t = 0; t <= 6; ++t) {
    CHECK(sidak_alt_dist_pmf(a, t, &p) == SIDAK_OK);
    total += p;
  }
  CHECK(fabs(total - 1.0) < 1e-9);
  CHECK(fabs(sidak_alt_dist_mass(a) - 1.0) < 1e-9);
  sidak_alt_dist_free(a);
  CHECK(sidak_alt_dist_create(20, 20, 3, 3, 2.0, 100, &a) == SIDAK_E_BUDGET);
  CHECK(sidak_exact_power(10, 10, 1, 1, 2.0, 0.05, 0, &power) == SIDAK_OK);
  CHECK(fabs(power - 0.1908) < 5e-4);
}

static void test_power(void) {
  sidak_alternative alt = {SIDAK_ALT_LEHMANN, 2.0, 0.0, 0, 0};
  sidak_power_options opts = sidak_power_options_default();
  sidak_power a, b;
  sidak_power_cell cells[2];
  sidak_power rows[2];
  opts.reps = 20000;
  opts.seed = 11;
  CHECK(sidak_mc_power(10, 10, 1, 1, 0.05, &alt, SIDAK_STAT_T, &opts, &a) == SIDAK_OK);
  CHECK(sidak_mc_power(10, 10, 1, 1, 0.05, &alt, SIDAK_STAT_T, &opts, &b) == SIDAK_OK);
  CHECK(a.power == b.power);
  CHECK(fabs(a.power - 0.19) < 5 * a.std_error + 0.002);
  CHECK(sidak_mc_power(10, 12, 1, 1, 0.05, &alt, SIDAK_STAT_V, &opts, &a) == SIDAK_E_PARAMETER);
  alt.parameter = -1.0;
  CHECK(sidak_mc_power(10, 10, 1, 1, 0.05, &alt, SIDAK_STAT_T, &opts, &a) == SIDAK_E_PARAMETER);

  alt.parameter = 3.0;
  cells[0].m = cells[0].n = 10;
  cells[0].r = cells[0].s = 1;
  cells[0].alternative = alt;
  cells[0].statistic = SIDAK_STAT_T;
  cells[1] = cells[0];
  cells[1].statistic = SIDAK_STAT_Q;
  CHECK(sidak_table_experiment(cells, 2, 0.05, 5000, 2, 1, 20000, rows) == SIDAK_OK);
  CHECK(rows[0].power > 0.3 && rows[1].power > 0.3);
  CHECK(sidak_table_experiment(cells, 0, 0.05, 5000, 2, 1, 20000, rows) == SIDAK_E_PARAMETER);
}

int main(void) {
  CHECK(strlen(sidak_version()) > 0);
  test_statistics();
  test_null();
  test_decisions();
  test_alternative();
  test_power();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}
