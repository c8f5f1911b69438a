// sidak-cli: exact and simulated precedence-exceedance two-sample tests.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "input.hpp"
#include "report.hpp"
#include "sidak/sidak.h"

namespace sidak_cli {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::int64_t reps = 100'000;
  double alpha = 0.05;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

struct OrderOptions {
  std::optional<int> r, s;
  std::optional<double> rho1, rho2;
};

void check(sidak_status status) {
  if (status != SIDAK_OK) throw CliError(static_cast<int>(status), sidak_last_error());
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::csv;
  if (f == "json") return Format::json;
  throw CliError(kExitParameter, "--format must be csv or json");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw CliError(kExitParameter, "--alpha must lie in (0, 1)");
}

void check_reps(std::int64_t reps) {
  if (reps < 1000) throw CliError(kExitParameter, "--reps must be at least 1000 for Monte-Carlo work");
}

std::vector<double> parse_numbers(const std::vector<std::string>& items, const std::string& what) {
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(parse_number(item, what));
  return out;
}

// r and s from explicit orders or from rates; orders win when both appear.
std::pair<int, int> resolve_orders(const OrderOptions& o, std::int64_t n) {
  if (o.r && o.s) return {*o.r, *o.s};
  if (o.rho1 && o.rho2) {
    int r = 0, s = 0;
    check(sidak_orders_from_rates(n, *o.rho1, *o.rho2, &r, &s));
    return {r, s};
  }
  throw CliError(kExitParameter, "give both --r and --s, or both --rho1 and --rho2");
}

Json global_config(const GlobalOptions& g) {
  Json c = Json::object();
  c["seed"] = g.seed;
  c["reps"] = g.reps;
  c["alpha"] = g.alpha;
  c["format"] = g.format;
  return c;
}

void emit(const GlobalOptions& g, const Table& table, const Json& config) {
  const Format format = parse_format(g.format);
  if (g.out.empty()) {
    write_table(std::cout, table, config, format);
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw CliError(kExitInput, "cannot write '" + g.out + "'");
  write_table(file, table, config, format);
}

std::string exact_decimal(const sidak_null_dist* dist, int which, std::int64_t t, int digits) {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  check(sidak_null_dist_decimal(dist, which, t, digits, buf.data(), buf.size()));
  return buf.data();
}

struct NullDistHandle {
  sidak_null_dist* ptr = nullptr;
  NullDistHandle(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s) {
    check(sidak_null_dist_create(m, n, r, s, &ptr));
  }
  ~NullDistHandle() { sidak_null_dist_free(ptr); }
  NullDistHandle(const NullDistHandle&) = delete;
  NullDistHandle& operator=(const NullDistHandle&) = delete;
};

const char* outcome_name(sidak_outcome o) {
  switch (o) {
    case SIDAK_REJECT: return "reject";
    case SIDAK_RANDOMIZED: return "randomized";
    default: return "accept";
  }
}

// ---- test ----

struct TestOptions {
  std::string training, test, input, training_column, test_column;
  OrderOptions orders;
};

void cmd_test(const GlobalOptions& g, const TestOptions& o) {
  check_alpha(g.alpha);
  Column x, y;
  if (!o.input.empty()) {
    if (o.training_column.empty() || o.test_column.empty()) {
      throw CliError(kExitParameter, "--input needs --training-column and --test-column");
    }
    x = read_csv_column(o.input, o.training_column);
    y = read_csv_column(o.input, o.test_column);
  } else {
    if (o.training.empty() || o.test.empty()) {
      throw CliError(kExitParameter, "give --training and --test files, or --input with column selectors");
    }
    x = read_group_file(o.training);
    y = read_group_file(o.test);
  }
  const auto m = static_cast<std::int64_t>(x.values.size());
  const auto n = static_cast<std::int64_t>(y.values.size());
  const auto [r, s] = resolve_orders(o.orders, n);

  int ties = 0;
  check(sidak_has_ties(x.values.data(), x.values.size(), y.values.data(), y.values.size(), &ties));
  if (ties) {
    std::cerr << "warning: training and test samples share tied values; "
                 "exact null probabilities assume continuous data\n";
  }

  std::vector<std::int64_t> precedence(static_cast<std::size_t>(std::max(r, 0)));
  std::vector<std::int64_t> exceedance(static_cast<std::size_t>(std::max(s, 0)));
  sidak_statistics st{};
  check(sidak_statistics_compute(x.values.data(), x.values.size(), y.values.data(), y.values.size(), r, s, &st,
                                 precedence.data(), exceedance.data()));

  NullDistHandle null(m, n, r, s);
  sidak_critical_value cv{};
  check(sidak_critical_value_exact(m, n, r, s, g.alpha, &cv));
  sidak_decision decision{};
  check(sidak_randomized_decision(st.T, &cv, g.alpha, g.seed, 0, &decision));

  Table table;
  table.columns = {"m", "n", "r", "s", "precedence", "exceedance", "P", "E", "T", "Q", "B", "A", "V",
                   "c", "alpha1", "alpha2", "phi", "outcome", "rejected", "draw", "p_value"};
  table.add({m, n, r, s, Json(precedence), Json(exceedance), st.P, st.E, st.T, st.Q, st.B,
             st.has_A ? Json(st.A) : Json(), st.has_V ? Json(st.V) : Json(), cv.c, cv.alpha1, cv.alpha2,
             decision.phi, outcome_name(decision.outcome), decision.rejected != 0,
             std::isnan(decision.draw) ? Json() : Json(decision.draw), exact_decimal(null.ptr, 2, st.T, 15)});

  Json config = global_config(g);
  config["subcommand"] = "test";
  config["training"] = o.input.empty() ? o.training : o.input + ":" + x.name;
  config["test"] = o.input.empty() ? o.test : o.input + ":" + y.name;
  config["r"] = r;
  config["s"] = s;
  config["ties"] = ties != 0;
  emit(g, table, config);
}

// ---- null-dist ----

struct NullOptions {
  std::int64_t m = 0, n = 0;
  OrderOptions orders;
  int digits = 20;
};

void cmd_null_dist(const GlobalOptions& g, const NullOptions& o) {
  if (o.digits < 15 || o.digits > 200) throw CliError(kExitParameter, "--digits must lie in [15, 200]");
  const auto [r, s] = resolve_orders(o.orders, o.n);
  NullDistHandle null(o.m, o.n, r, s);
  Table table;
  table.columns = {"t", "pmf", "cdf"};
  for (std::int64_t t = 0; t <= sidak_null_dist_max(null.ptr); ++t) {
    table.add({t, exact_decimal(null.ptr, 0, t, o.digits), exact_decimal(null.ptr, 1, t, o.digits)});
  }
  Json config = global_config(g);
  config["subcommand"] = "null-dist";
  config["m"] = o.m;
  config["n"] = o.n;
  config["r"] = r;
  config["s"] = s;
  config["digits"] = o.digits;
  emit(g, table, config);
}

// ---- critical-values ----

struct CriticalOptions {
  std::vector<std::int64_t> m, n;
  std::vector<int> r, s;
  std::vector<std::string> rho;
  std::string method = "exact";
  std::string statistic = "T";
};

sidak_statistic parse_statistic(const std::string& name) {
  if (name == "T") return SIDAK_STAT_T;
  if (name == "V") return SIDAK_STAT_V;
  if (name == "Q") return SIDAK_STAT_Q;
  throw CliError(kExitParameter, "unknown statistic '" + name + "' (expected T, V or Q)");
}

void cmd_critical_values(const GlobalOptions& g, const CriticalOptions& o) {
  check_alpha(g.alpha);
  const bool mc = o.method == "mc";
  if (!mc && o.method != "exact") throw CliError(kExitParameter, "--method must be exact or mc");
  const sidak_statistic statistic = parse_statistic(o.statistic);
  if (!mc && statistic != SIDAK_STAT_T) throw CliError(kExitParameter, "exact critical values exist for T only");
  if (mc) check_reps(g.reps);
  if (o.m.empty() || o.n.empty()) throw CliError(kExitParameter, "--m and --n are required");
  const bool by_rate = !o.rho.empty();
  if (by_rate == (!o.r.empty() || !o.s.empty())) {
    throw CliError(kExitParameter, "give either --rho or both --r and --s");
  }
  if (!by_rate && (o.r.empty() || o.s.empty())) throw CliError(kExitParameter, "--r and --s are both required");

  Table table;
  table.columns = {"rho", "m", "n", "r", "s", "c", "alpha1", "alpha2"};
  std::uint64_t stream = 0;
  auto add_row = [&](const Json& rho, std::int64_t m, std::int64_t n, int r, int s) {
    sidak_critical_value cv{};
    if (mc) {
      check(sidak_critical_value_mc(m, n, r, s, g.alpha, statistic, g.reps, g.seed, stream++, g.threads, &cv));
    } else {
      check(sidak_critical_value_exact(m, n, r, s, g.alpha, &cv));
    }
    table.add({rho, m, n, r, s, cv.c, rounded(cv.alpha1, 4), rounded(cv.alpha2, 4)});
  };
  if (by_rate) {
    const auto rates = parse_numbers(o.rho, "--rho");
    for (std::size_t k = 0; k < rates.size(); ++k) {
      for (auto m : o.m) {
        for (auto n : o.n) {
          int r = 0, s = 0;
          check(sidak_orders_from_rates(n, rates[k], rates[k], &r, &s));
          add_row(o.rho[k], m, n, r, s);
        }
      }
    }
  } else {
    for (auto m : o.m) {
      for (auto n : o.n) {
        for (int r : o.r) {
          for (int s : o.s) add_row(Json(), m, n, r, s);
        }
      }
    }
  }
  Json config = global_config(g);
  config["subcommand"] = "critical-values";
  config["method"] = o.method;
  config["statistic"] = o.statistic;
  emit(g, table, config);
}

// ---- power / compare ----

struct PowerOptionsCli {
  std::vector<std::int64_t> m, n;
  std::vector<int> r, s;
  std::vector<std::string> parameters;
  std::vector<std::string> statistics;
  std::string alternative = "lehmann";
  std::string vary = "test";
  std::string baseline = "uniform";
  double shape = 1.0;
  std::string method = "mc";
  std::int64_t calibration_reps = 1'000'000;
  double budget = 0.0;
  std::string curves_dir;
  bool paired_orders = false;
};

sidak_alternative make_alternative(const PowerOptionsCli& o, double parameter) {
  sidak_alternative a{};
  if (o.alternative == "lehmann") {
    a.kind = SIDAK_ALT_LEHMANN;
  } else if (o.alternative == "exponential") {
    a.kind = SIDAK_ALT_EXPONENTIAL;
  } else if (o.alternative == "weibull") {
    a.kind = SIDAK_ALT_WEIBULL;
  } else {
    throw CliError(kExitParameter, "--alternative must be lehmann, exponential or weibull");
  }
  if (o.vary != "test" && o.vary != "training") throw CliError(kExitParameter, "--vary must be test or training");
  if (o.baseline != "uniform" && o.baseline != "exponential") {
    throw CliError(kExitParameter, "--baseline must be uniform or exponential");
  }
  a.parameter = parameter;
  a.shape = o.shape;
  a.vary_training = o.vary == "training";
  a.exponential_baseline = o.baseline == "exponential";
  return a;
}

struct Design {
  std::int64_t m, n;
  int r, s;
};

std::vector<Design> designs(const PowerOptionsCli& o) {
  if (o.m.empty() || o.r.empty()) throw CliError(kExitParameter, "--m and --r are required");
  const std::vector<int> ss = o.s.empty() ? o.r : o.s;
  std::vector<Design> out;
  for (auto m : o.m) {
    const std::vector<std::int64_t> ns = o.n.empty() ? std::vector<std::int64_t>{m} : o.n;
    for (auto n : ns) {
      if (o.paired_orders || o.s.empty()) {
        if (ss.size() != o.r.size()) throw CliError(kExitParameter, "--r and --s lists must have equal length");
        for (std::size_t k = 0; k < o.r.size(); ++k) out.push_back({m, n, o.r[k], ss[k]});
      } else {
        for (int r : o.r) {
          for (int s : ss) out.push_back({m, n, r, s});
        }
      }
    }
  }
  return out;
}

std::string parameter_name(const std::string& alternative) {
  if (alternative == "exponential") return "rate";
  if (alternative == "weibull") return "scale";
  return "gamma";
}

// Every (design, parameter, statistic) cell in grid order.
struct PowerGrid {
  std::vector<sidak_power_cell> cells;
  std::vector<std::string> parameter_text;
  std::vector<std::string> statistic_text;
};

PowerGrid build_grid(const PowerOptionsCli& o) {
  if (o.parameters.empty()) throw CliError(kExitParameter, "--" + parameter_name(o.alternative) + " is required");
  const auto values = parse_numbers(o.parameters, "--" + parameter_name(o.alternative));
  PowerGrid grid;
  for (const Design& d : designs(o)) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      for (const auto& stat : o.statistics) {
        grid.cells.push_back({d.m, d.n, d.r, d.s, make_alternative(o, values[k]), parse_statistic(stat)});
        grid.parameter_text.push_back(o.parameters[k]);
        grid.statistic_text.push_back(stat);
      }
    }
  }
  return grid;
}

std::vector<sidak_power> run_grid(const GlobalOptions& g, const PowerOptionsCli& o, const PowerGrid& grid) {
  std::vector<sidak_power> results(grid.cells.size());
  if (o.method == "exact") {
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
      const auto& c = grid.cells[k];
      if (c.alternative.kind != SIDAK_ALT_LEHMANN || c.statistic != SIDAK_STAT_T) {
        throw CliError(kExitParameter, "the exact method covers the T statistic under Lehmann alternatives");
      }
      sidak_critical_value cv{};
      check(sidak_critical_value_exact(c.m, c.n, c.r, c.s, g.alpha, &cv));
      double power = 0.0;
      check(sidak_exact_power(c.m, c.n, c.r, c.s, c.alternative.parameter, g.alpha, o.budget, &power));
      results[k] = {power, 0.0, cv, 0};
    }
    return results;
  }
  if (o.method != "mc") throw CliError(kExitParameter, "--method must be mc or exact");
  check_reps(g.reps);
  if (o.calibration_reps < 10'000) throw CliError(kExitParameter, "--calibration-reps must be at least 10000");
  check(sidak_table_experiment(grid.cells.data(), grid.cells.size(), g.alpha, g.reps, g.seed, g.threads,
                               o.calibration_reps, results.data()));
  return results;
}

Json power_config(const GlobalOptions& g, const PowerOptionsCli& o, const char* subcommand) {
  Json config = global_config(g);
  config["subcommand"] = subcommand;
  config["method"] = o.method;
  config["alternative"] = o.alternative;
  config["vary"] = o.vary;
  if (o.alternative == "lehmann") config["baseline"] = o.baseline;
  if (o.alternative == "weibull") config["shape"] = o.shape;
  if (o.method == "mc") config["calibration_reps"] = o.calibration_reps;
  return config;
}

void write_curves(const PowerOptionsCli& o, const PowerGrid& grid, const std::vector<sidak_power>& results) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(o.curves_dir, ec);
  if (ec) throw CliError(kExitInput, "cannot create '" + o.curves_dir + "': " + ec.message());
  std::map<std::string, std::vector<std::size_t>> curves;
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    const auto& c = grid.cells[k];
    std::ostringstream name;
    name << "power_m" << c.m << "_n" << c.n << "_r" << c.r << "_s" << c.s << "_" << grid.statistic_text[k] << ".csv";
    curves[name.str()].push_back(k);
  }
  const std::string column = parameter_name(o.alternative);
  for (const auto& [name, members] : curves) {
    std::ofstream file(fs::path(o.curves_dir) / name, std::ios::binary);
    if (!file) throw CliError(kExitInput, "cannot write curve file '" + name + "'");
    file << column << ",power\r\n";
    for (std::size_t k : members) {
      file << csv_cell(grid.cells[k].alternative.parameter) << "," << csv_cell(results[k].power) << "\r\n";
    }
  }
}

void cmd_power(const GlobalOptions& g, PowerOptionsCli o) {
  check_alpha(g.alpha);
  if (o.statistics.empty()) o.statistics = {"T"};
  const PowerGrid grid = build_grid(o);
  const auto results = run_grid(g, o, grid);

  Table table;
  const std::string param = parameter_name(o.alternative);
  table.columns = {"m", "n", "r", "s", "alternative", param, "statistic", "power", "std_error",
                   "c", "alpha1", "alpha2", "reps"};
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    const auto& c = grid.cells[k];
    const auto& e = results[k];
    table.add({c.m, c.n, c.r, c.s, o.alternative, c.alternative.parameter, grid.statistic_text[k], e.power,
               e.std_error, e.critical.c, e.critical.alpha1, e.critical.alpha2, e.reps});
  }
  if (!o.curves_dir.empty()) write_curves(o, grid, results);
  emit(g, table, power_config(g, o, "power"));
}

// One row per (design, parameter) with a power column per statistic.
void cmd_compare(const GlobalOptions& g, PowerOptionsCli o) {
  check_alpha(g.alpha);
  if (o.statistics.empty()) o.statistics = {"T", "V", "Q"};
  o.paired_orders = true;
  const PowerGrid grid = build_grid(o);
  const auto results = run_grid(g, o, grid);

  Table table;
  const std::string param = parameter_name(o.alternative);
  table.columns = {"m", "n", "r", "s", param};
  for (const auto& st : o.statistics) {
    table.columns.push_back("power_" + st);
    table.columns.push_back("se_" + st);
    table.columns.push_back("c_" + st);
  }
  const std::size_t width = o.statistics.size();
  for (std::size_t k = 0; k < grid.cells.size(); k += width) {
    const auto& c = grid.cells[k];
    std::vector<Json> row = {c.m, c.n, c.r, c.s, c.alternative.parameter};
    for (std::size_t j = 0; j < width; ++j) {
      row.push_back(results[k + j].power);
      row.push_back(results[k + j].std_error);
      row.push_back(results[k + j].critical.c);
    }
    table.add(std::move(row));
  }
  emit(g, table, power_config(g, o, "compare"));
}

void add_orders(CLI::App* app, OrderOptions& o) {
  app->add_option("--r", o.r, "Number of precedence cells");
  app->add_option("--s", o.s, "Number of exceedance cells");
  app->add_option("--rho1", o.rho1, "Precedence rate, r = floor(rho1 n) + 1");
  app->add_option("--rho2", o.rho2, "Exceedance rate, s = floor(rho2 n) + 1");
}

void add_power_options(CLI::App* app, PowerOptionsCli& o) {
  app->add_option("--m", o.m, "Training sizes")->delimiter(',')->required();
  app->add_option("--n", o.n, "Test sizes (default: n = m for each m)")->delimiter(',');
  app->add_option("--r", o.r, "Precedence cell counts")->delimiter(',')->required();
  app->add_option("--s", o.s, "Exceedance cell counts (default: same as --r)")->delimiter(',');
  app->add_option("--gamma,--rate,--scale", o.parameters, "Varied parameter values; fractions like 1/2 allowed")
      ->delimiter(',');
  app->add_option("--statistic", o.statistics, "Statistics among T, V, Q")->delimiter(',');
  app->add_option("--alternative", o.alternative, "lehmann, exponential or weibull");
  app->add_option("--shape", o.shape, "Weibull shape");
  app->add_option("--vary", o.vary, "Group carrying the varied parameter: test or training");
  app->add_option("--baseline", o.baseline, "Lehmann baseline: uniform or exponential");
  app->add_option("--method", o.method, "mc or exact");
  app->add_option("--calibration-reps", o.calibration_reps, "Null replicates calibrating V and Q");
  app->add_option("--budget", o.budget, "Term budget for the exact method");
}

}  // namespace
}  // namespace sidak_cli

int main(int argc, char** argv) {
  using namespace sidak_cli;
  CLI::App app{"Precedence-exceedance two-sample tests"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--reps", g.reps, "Monte-Carlo replicates");
  app.add_option("--alpha", g.alpha, "Significance level");
  app.add_option("--format", g.format, "csv or json");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Run the test on two samples");
  test_cmd->add_option("--training", test.training, "Training (X) sample file");
  test_cmd->add_option("--test", test.test, "Test (Y) sample file");
  test_cmd->add_option("--input", test.input, "CSV file holding both samples");
  test_cmd->add_option("--training-column", test.training_column, "Training column name or 1-based index");
  test_cmd->add_option("--test-column", test.test_column, "Test column name or 1-based index");
  add_orders(test_cmd, test.orders);

  NullOptions null;
  auto* null_cmd = app.add_subcommand("null-dist", "Exact null distribution of T");
  null_cmd->add_option("--m", null.m, "Training size")->required();
  null_cmd->add_option("--n", null.n, "Test size")->required();
  null_cmd->add_option("--digits", null.digits, "Decimal digits of the exact values");
  add_orders(null_cmd, null.orders);

  CriticalOptions crit;
  auto* crit_cmd = app.add_subcommand("critical-values", "Critical values c with attained sizes");
  crit_cmd->add_option("--m", crit.m, "Training sizes")->delimiter(',');
  crit_cmd->add_option("--n", crit.n, "Test sizes")->delimiter(',');
  crit_cmd->add_option("--r", crit.r, "Precedence cell counts")->delimiter(',');
  crit_cmd->add_option("--s", crit.s, "Exceedance cell counts")->delimiter(',');
  crit_cmd->add_option("--rho", crit.rho, "Rates with r = s = floor(rho n) + 1")->delimiter(',');
  crit_cmd->add_option("--method", crit.method, "exact or mc");
  crit_cmd->add_option("--statistic", crit.statistic, "T, V or Q (mc only for V and Q)");

  PowerOptionsCli power;
  auto* power_cmd = app.add_subcommand("power", "Power under an alternative");
  add_power_options(power_cmd, power);
  power_cmd->add_option("--curves-dir", power.curves_dir, "Directory for one CSV per power curve");

  PowerOptionsCli compare;
  auto* compare_cmd = app.add_subcommand("compare", "Side-by-side power of T, V and Q");
  add_power_options(compare_cmd, compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  }

  try {
    if (*test_cmd) cmd_test(g, test);
    if (*null_cmd) cmd_null_dist(g, null);
    if (*crit_cmd) cmd_critical_values(g, crit);
    if (*power_cmd) cmd_power(g, power);
    if (*compare_cmd) cmd_compare(g, compare);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
