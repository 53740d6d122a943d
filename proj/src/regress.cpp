#include "rss/regress.hpp"

#include <cmath>

#include "rss/distributions.hpp"
#include "rss/error.hpp"
#include "rss/linalg.hpp"
#include "rss/timeseries.hpp"

namespace rss {

const Coefficient& OlsResult::coefficient(const std::string& name) const {
  for (const auto& c : coefficients)
    if (c.name == name) return c;
  throw InputError("no coefficient named '" + name + "'");
}

OlsResult ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, std::vector<std::string> names) {
  const auto n = X.rows();
  const auto k = X.cols();
  if (k < 1 || !(X.col(0).array() == 1.0).all()) throw InputError("ols_fit: column 0 must be the intercept");
  if (static_cast<Eigen::Index>(names.size()) != k) throw InputError("ols_fit: one name per column required");
  if (n <= k) throw DegenerateDataError("ols_fit: need more observations than coefficients");
  if (y.size() != n) throw InputError("ols_fit: y and X lengths differ");

  const auto fit = least_squares(X, y);
  OlsResult r;
  r.n = static_cast<std::size_t>(n);
  r.df_resid = static_cast<int>(n - k);
  r.residuals = fit.residuals.col(0);
  r.fitted = y - r.residuals;
  const double rss = r.residuals.squaredNorm();
  const double mean = y.mean();
  const double tss = (y.array() - mean).square().sum();
  const double s2 = rss / r.df_resid;
  r.residual_se = std::sqrt(s2);
  r.r_squared = tss > 0 ? 1.0 - rss / tss : 1.0;
  r.adj_r_squared = 1.0 - (1.0 - r.r_squared) * static_cast<double>(n - 1) / r.df_resid;
  for (Eigen::Index j = 0; j < k; ++j) {
    Coefficient c;
    c.name = names[static_cast<std::size_t>(j)];
    c.estimate = fit.coef(j, 0);
    c.std_error = std::sqrt(s2 * fit.xtx_inv(j, j));
    c.t_stat = c.std_error > 0 ? c.estimate / c.std_error : std::copysign(INFINITY, c.estimate);
    c.p_value = t_two_sided(c.t_stat, r.df_resid);
    r.coefficients.push_back(c);
  }
  r.f_df1 = static_cast<int>(k - 1);
  r.f_df2 = r.df_resid;
  if (r.f_df1 > 0) {
    r.f_stat = r.r_squared >= 1.0 ? INFINITY : (r.r_squared / r.f_df1) / ((1.0 - r.r_squared) / r.f_df2);
    r.f_p_value = f_sf(r.f_stat, r.f_df1, r.f_df2);
  }
  return r;
}

AugmentationStudy augmentation_study(const Series& actual, const Series& forecast, const Series& extra, int lag_extra,
                                     std::optional<Period> from, std::optional<Period> to, std::string actual_name,
                                     std::string forecast_name, std::string extra_name) {
  const Series lagged = lag_extra > 0 ? lag(extra, lag_extra) : extra;
  auto aligned = align({actual.slice(from, to), forecast.slice(from, to), lagged.slice(from, to)});
  const auto n = aligned.values.rows();
  Eigen::MatrixXd X1(n, 2), X2(n, 3);
  X1.col(0).setOnes();
  X1.col(1) = aligned.values.col(1);
  X2.leftCols(2) = X1;
  X2.col(2) = aligned.values.col(2);
  const Eigen::VectorXd y = aligned.values.col(0);

  AugmentationStudy s;
  s.actual_name = actual_name;
  s.forecast_name = forecast_name;
  s.extra_name = extra_name;
  s.restricted = ols_fit(y, X1, {"Constant", forecast_name});
  s.augmented = ols_fit(y, X2, {"Constant", forecast_name, extra_name});
  s.adj_r2_incremental_ratio =
      (s.augmented.adj_r_squared - s.restricted.adj_r_squared) / s.restricted.adj_r_squared;
  s.periods = std::move(aligned.periods);
  return s;
}

}  // namespace rss
