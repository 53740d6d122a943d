#pragma once

#include <span>
#include <string>
#include <vector>

#include "rss/series.hpp"

namespace rss {

enum class Deterministic { constant, constant_trend };

std::string_view to_string(Deterministic d);
Deterministic parse_deterministic(std::string_view s);  // "c" | "ct" | "constant" | "trend"

// When the statistic falls outside the tabulated range the p-value is clamped to the table edge
// and reported as a bound ("< 0.01", "> 0.1").
enum class PBound { exact, below, above };

struct UnitRootResult {
  std::string test;  // "ADF" or "KPSS"
  double statistic = 0;
  double p_value = 1;
  PBound bound = PBound::exact;
  int lags = 0;
  Deterministic det = Deterministic::constant;
  std::size_t n = 0;

  bool rejects(double alpha) const { return p_value < alpha; }
  std::string p_text() const;  // "0.195", "< 0.01", "> 0.1"
};

// Regression of dy_t on deterministic terms, y_{t-1} and dy_{t-1..t-lags}; t-ratio of y_{t-1}.
// Null: unit root.
UnitRootResult adf_test(std::span<const double> y, int lags, Deterministic det = Deterministic::constant);
// Partial sums of detrended residuals over a Bartlett long-run variance. Null: stationarity.
UnitRootResult kpss_test(std::span<const double> y, int trunc_lag, Deterministic det = Deterministic::constant);

UnitRootResult adf_test(const Series& s, int lags, Deterministic det = Deterministic::constant);
UnitRootResult kpss_test(const Series& s, int trunc_lag, Deterministic det = Deterministic::constant);

// p-value interpolation against the embedded tables; exposed for table checks.
double adf_critical_value(double p, std::size_t n, Deterministic det);
double kpss_critical_value(double p, Deterministic det);

struct IntegrationOptions {
  int max_order = 2;
  double alpha = 0.05;
  int adf_lags = 6;
  int kpss_lag = 3;
  Deterministic det = Deterministic::constant;
};

struct IntegrationStep {
  int d = 0;
  UnitRootResult adf;
  UnitRootResult kpss;
  bool adf_stationary = false;   // ADF rejects the unit root
  bool kpss_stationary = false;  // KPSS does not reject stationarity
};

struct IntegrationOrder {
  int order = 0;
  bool conflict = false;  // tests disagreed at every order; `order` is the conservative choice
  std::vector<IntegrationStep> steps;
};

// Smallest d <= max_order whose d-th difference passes both tests (ADF rejects, KPSS does not).
IntegrationOrder integration_order(std::span<const double> y, const IntegrationOptions& opt = {});

}  // namespace rss
