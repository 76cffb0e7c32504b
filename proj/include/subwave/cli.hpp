#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "subwave/io.hpp"

namespace subwave::cli {

struct Grid {
  double lo = 0.0, hi = 0.0;
  int points = 0;
};

struct McSettings {
  double t_min = 0.5, t_max = 2.0;
  double x_min = -2.0, x_max = 3.0;
  int points = 10;
  int hist_samples = 10'000;
  int hist_bins = 50;
};

/// Parsed experiment file. Every key is optional except "spec" (which the
/// density subcommand can replace with --alpha).
struct ExperimentConfig {
  ojson raw;
  std::optional<SubordinatorSpec> spec;
  std::string profile_kind = "logistic";  // logistic | step-lower | step-upper
  double profile_edge = 0.0;
  double v = 1.0;
  double eps = 0.05;
  double beta = 0.5;
  Grid t_grid{1e2, 1e6, 9};   // log-spaced
  std::vector<double> t_values;  // explicit list, overrides t_grid
  Grid x_grid{-5.0, 5.0, 21};
  Grid tau_grid{0.0, 10.0, 101};
  std::string average = "cesaro";       // cesaro | pointwise
  std::string evaluator = "tauberian";  // tauberian | direct
  double slack = 0.05;
  std::optional<double> burn_in;
  double tolerance = 0.05;  // exponent (C1) or relative coefficient (C2/C3) tolerance
  McSettings mc;
  std::map<std::string, std::string> outputs;
};

/// Throws ConfigError on schema violations.
ExperimentConfig parse_config(const ojson& j);
ExperimentConfig load_config(const std::string& path);

/// n points from lo to hi, geometric; the endpoints are exact.
std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

/// Exit codes: 0 all checks pass, 1 a check failed, 2 bad config or usage,
/// 3 numerical failure (stage named on err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace subwave::cli
