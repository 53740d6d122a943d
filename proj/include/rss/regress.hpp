#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "rss/series.hpp"

namespace rss {

struct Coefficient {
  std::string name;
  double estimate = 0;
  double std_error = 0;
  double t_stat = 0;
  double p_value = 1;
};

struct OlsResult {
  std::vector<Coefficient> coefficients;  // intercept first
  double r_squared = 0;
  double adj_r_squared = 0;
  double residual_se = 0;
  int df_resid = 0;
  double f_stat = 0;
  int f_df1 = 0;
  int f_df2 = 0;
  double f_p_value = 1;
  std::size_t n = 0;
  Eigen::VectorXd residuals;
  Eigen::VectorXd fitted;

  const Coefficient& coefficient(const std::string& name) const;
};

// Least squares with classical standard errors. Column 0 of X must be the intercept (all ones);
// the F test is of all other coefficients jointly zero. `names` labels the columns of X.
OlsResult ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, std::vector<std::string> names);

struct AugmentationStudy {
  OlsResult restricted;  // actual ~ forecast
  OlsResult augmented;   // actual ~ forecast + extra lagged
  // (adjR2_augmented - adjR2_restricted) / adjR2_restricted
  double adj_r2_incremental_ratio = 0;
  std::vector<Period> periods;
  std::string actual_name, forecast_name, extra_name;
};

// Both regressions run on the same rows: periods where actual, forecast and the lagged extra
// series are all present, optionally restricted to [from, to].
AugmentationStudy augmentation_study(const Series& actual, const Series& forecast, const Series& extra, int lag_extra = 1,
                                     std::optional<Period> from = std::nullopt, std::optional<Period> to = std::nullopt,
                                     std::string actual_name = "actual", std::string forecast_name = "forecast",
                                     std::string extra_name = "extra");

}  // namespace rss
