#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rss {

// VAR(p) in levels with intercept, estimated equation by equation with least squares.
// Design row for time t: [1, y_{t-1}', ..., y_{t-p}'].
struct VarModel {
  int K = 0;
  int p = 0;
  bool intercept = true;
  Eigen::Index T = 0;        // rows of the data the model was fitted on
  Eigen::Index first_row = 0;  // first data row used as a dependent observation
  Eigen::MatrixXd design;     // T_eff x (intercept + K p)
  Eigen::MatrixXd coef;       // (intercept + K p) x K, column i = equation i
  Eigen::MatrixXd residuals;  // T_eff x K
  Eigen::MatrixXd sigma;      // residual cross-product / T_eff
  Eigen::MatrixXd xtx_inv;
  std::vector<std::string> names;

  Eigen::Index t_eff() const { return residuals.rows(); }
  Eigen::Index regressors() const { return design.cols(); }
  Eigen::VectorXd intercepts() const;
  // A_l (K x K): A_l(i, j) is the effect of variable j at lag l on equation i.
  Eigen::MatrixXd lag_matrix(int l) const;
  // Row of `coef` holding variable j at lag l.
  Eigen::Index coef_row(int lag, int j) const { return (intercept ? 1 : 0) + (lag - 1) * K + j; }
  // Covariance of equation i's coefficients: s_i^2 (X'X)^{-1}, s_i^2 = RSS_i / (T_eff - k).
  Eigen::MatrixXd equation_covariance(int i) const;
};

// `skip` reserves extra leading rows so that models with different p share one sample.
// Requires T - p - skip > K p + 1. Throws DegenerateDataError or NumericalError.
VarModel fit_var(const Eigen::MatrixXd& data, int p, bool intercept = true, int skip = 0,
                 std::vector<std::string> names = {});

struct LagSelection {
  int best_p = 0;
  std::vector<double> aic;  // aic[p - 1] for p = 1..p_max
  Eigen::Index t_eff = 0;
};

// AIC(p) = ln det Sigma(p) + 2 (K^2 p + K) / T_eff on the common sample (first p_max rows reserved).
LagSelection select_lag_aic(const Eigen::MatrixXd& data, int p_max = 20, bool intercept = true);

struct DiagnosticResult {
  std::string test_name;
  double statistic = 0;
  int df = 0;
  double p_value = 1;
  int lags = 0;
};

// Adjusted multivariate Ljung-Box: T^2 sum_j tr(C_j' C_0^-1 C_j C_0^-1) / (T - j), df = K^2 (h - p).
DiagnosticResult portmanteau_test(const VarModel& m, int h);
// LM test from the auxiliary regression of residuals on the regressors and h lagged residuals
// (zero-filled), statistic T (K - tr(Sigma_0^-1 Sigma_1)), df = K^2 h.
DiagnosticResult breusch_godfrey_test(const VarModel& m, int h);

inline constexpr double kCusumBoundary5pct = 1.358;

struct CusumProcess {
  std::string equation;
  std::vector<double> t;  // 0, 1/T_eff, ..., 1
  std::vector<double> w;  // W(t)
  double sup_abs = 0;
  bool crossed = false;
};

struct CusumResult {
  double boundary = kCusumBoundary5pct;
  std::vector<CusumProcess> equations;
  bool stable() const;
};

// OLS-CUSUM empirical fluctuation process per equation against the 5% Brownian-bridge boundary.
CusumResult ols_cusum(const VarModel& m, double boundary = kCusumBoundary5pct);

}  // namespace rss
