#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rss::mc {

// One Monte Carlo property: an observed rate (or error) compared against a closed band.
struct Check {
  std::string name;
  std::string description;
  double value = 0;
  double lo = 0;
  double hi = 1;
  int replications = 0;
  int failures = 0;  // replications that raised an error (counted as non-rejections)
  bool gate = true;  // false: reported for context, never fails
  bool pass() const { return !gate || (value >= lo && value <= hi); }
};

struct Config {
  std::uint64_t master_seed = 20141001;
  int threads = 0;  // 0: OpenMP default
};

// ADF and KPSS size and power at n = 500, 1000 replications each.
std::vector<Check> unit_root_size_power(const Config& cfg);
// Random walk -> 1 and white noise -> 0, 200 replications each, n = 500.
std::vector<Check> integration_order_recovery(const Config& cfg);
// Bivariate VAR(2), T = 10000: max |coef error|. AIC picks p = 3 for VAR(3) at T = 2000 (100 reps).
std::vector<Check> var_recovery(const Config& cfg);
// Portmanteau and Breusch-Godfrey size (correct fit) and power (under-lagged / AR errors).
std::vector<Check> diagnostics_size_power(const Config& cfg);
// OLS-CUSUM false alarms on a stable VAR and detection of a 5 sigma mid-sample intercept break in
// an equation without own-lag persistence. Detection with own lag 0.3 and 0.5 is reported ungated:
// the lagged dependent variable absorbs a permanent shift and the residual sums stay small.
std::vector<Check> cusum_size_power(const Config& cfg);
// Wald Granger test on a correctly specified stationary VAR with one-way causality.
std::vector<Check> wald_size_power(const Config& cfg);
// Full Toda-Yamamoto pipeline: independent random walks (spurious rate, naive comparison) and a
// one-way causal I(1) pair.
std::vector<Check> toda_yamamoto_size_power(const Config& cfg);
// Augmentation study with a pure-noise extra regressor.
std::vector<Check> augmentation_noise(const Config& cfg);

std::vector<Check> run_all(const Config& cfg);

}  // namespace rss::mc
