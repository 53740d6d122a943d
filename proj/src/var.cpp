#include "rss/var.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rss/distributions.hpp"
#include "rss/error.hpp"
#include "rss/linalg.hpp"

namespace rss {

namespace {

Eigen::MatrixXd lagged_design(const Eigen::MatrixXd& data, int p, bool intercept, Eigen::Index first) {
  const Eigen::Index T = data.rows();
  const Eigen::Index K = data.cols();
  const Eigen::Index rows = T - first;
  const Eigen::Index off = intercept ? 1 : 0;
  Eigen::MatrixXd X(rows, off + K * p);
  if (intercept) X.col(0).setOnes();
  for (int l = 1; l <= p; ++l)
    X.block(0, off + (l - 1) * K, rows, K) = data.block(first - l, 0, rows, K);
  return X;
}

double log_det_spd(const Eigen::MatrixXd& S) {
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) throw NumericalError("residual covariance is not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  return 2.0 * L.diagonal().array().log().sum();
}

}  // namespace

Eigen::VectorXd VarModel::intercepts() const {
  if (!intercept) return Eigen::VectorXd::Zero(K);
  return coef.row(0).transpose();
}

Eigen::MatrixXd VarModel::lag_matrix(int l) const {
  if (l < 1 || l > p) throw InputError("lag out of range");
  Eigen::MatrixXd A(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) A(i, j) = coef(coef_row(l, j), i);
  return A;
}

Eigen::MatrixXd VarModel::equation_covariance(int i) const {
  const double dof = static_cast<double>(t_eff() - regressors());
  const double s2 = residuals.col(i).squaredNorm() / dof;
  return s2 * xtx_inv;
}

VarModel fit_var(const Eigen::MatrixXd& data, int p, bool intercept, int skip, std::vector<std::string> names) {
  const Eigen::Index T = data.rows();
  const Eigen::Index K = data.cols();
  if (K < 1) throw InputError("VAR needs at least one variable");
  if (p < 1) throw InputError("VAR lag order must be >= 1");
  if (skip < 0) throw InputError("negative sample offset");
  if (!data.allFinite()) throw InputError("VAR data contains non-finite values");
  const Eigen::Index first = p + skip;
  if (T - first <= K * p + 1)
    throw DegenerateDataError("insufficient observations for VAR(" + std::to_string(p) + "): T = " + std::to_string(T));

  VarModel m;
  m.K = static_cast<int>(K);
  m.p = p;
  m.intercept = intercept;
  m.T = T;
  m.first_row = first;
  m.design = lagged_design(data, p, intercept, first);
  const Eigen::MatrixXd Y = data.bottomRows(T - first);
  auto fit = least_squares(m.design, Y);
  m.coef = std::move(fit.coef);
  m.residuals = std::move(fit.residuals);
  m.xtx_inv = std::move(fit.xtx_inv);
  m.sigma = m.residuals.transpose() * m.residuals / static_cast<double>(m.residuals.rows());
  if (names.empty())
    for (Eigen::Index j = 0; j < K; ++j) names.push_back("y" + std::to_string(j + 1));
  if (static_cast<Eigen::Index>(names.size()) != K) throw InputError("VAR variable name count mismatch");
  m.names = std::move(names);
  return m;
}

LagSelection select_lag_aic(const Eigen::MatrixXd& data, int p_max, bool intercept) {
  if (p_max < 1) throw InputError("p_max must be >= 1");
  LagSelection sel;
  const double K = static_cast<double>(data.cols());
  double best = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= p_max; ++p) {
    const auto m = fit_var(data, p, intercept, p_max - p);
    const double T_eff = static_cast<double>(m.t_eff());
    const double aic = log_det_spd(m.sigma) + 2.0 * (K * K * p + (intercept ? K : 0.0)) / T_eff;
    sel.aic.push_back(aic);
    sel.t_eff = m.t_eff();
    if (aic < best) {
      best = aic;
      sel.best_p = p;
    }
  }
  return sel;
}

DiagnosticResult portmanteau_test(const VarModel& m, int h) {
  if (h <= m.p) throw InputError("Portmanteau lag h must exceed the VAR order p");
  const Eigen::MatrixXd& u = m.residuals;
  const Eigen::Index T = u.rows();
  if (h >= T) throw DegenerateDataError("Portmanteau lag h exceeds the residual count");
  const double Td = static_cast<double>(T);
  const Eigen::MatrixXd C0 = u.transpose() * u / Td;
  Eigen::LDLT<Eigen::MatrixXd> c0(C0);
  if (c0.info() != Eigen::Success || !c0.isPositive()) throw NumericalError("residual covariance is singular");
  double q = 0;
  for (int j = 1; j <= h; ++j) {
    const Eigen::MatrixXd Cj = u.bottomRows(T - j).transpose() * u.topRows(T - j) / Td;
    const Eigen::MatrixXd a = c0.solve(Cj);                // C0^-1 Cj
    const Eigen::MatrixXd b = c0.solve(Cj.transpose());    // C0^-1 Cj'
    q += (b * a).trace() / (Td - j);                       // tr(Cj' C0^-1 Cj C0^-1)
  }
  q *= Td * Td;
  DiagnosticResult r;
  r.test_name = "Portmanteau (adjusted)";
  r.statistic = q;
  r.df = m.K * m.K * (h - m.p);
  r.p_value = chi_square_sf(q, r.df);
  r.lags = h;
  return r;
}

DiagnosticResult breusch_godfrey_test(const VarModel& m, int h) {
  if (h < 1) throw InputError("Breusch-Godfrey lag h must be >= 1");
  const Eigen::MatrixXd& u = m.residuals;
  const Eigen::Index T = u.rows();
  const Eigen::Index K = m.K;
  Eigen::MatrixXd Z(T, m.design.cols() + K * h);
  Z.leftCols(m.design.cols()) = m.design;
  Z.rightCols(K * h).setZero();
  for (int l = 1; l <= h; ++l)
    if (l < T) Z.block(l, m.design.cols() + (l - 1) * K, T - l, K) = u.topRows(T - l);
  const auto aux = least_squares(Z, u);
  const double Td = static_cast<double>(T);
  const Eigen::MatrixXd sigma0 = u.transpose() * u / Td;
  const Eigen::MatrixXd sigma1 = aux.residuals.transpose() * aux.residuals / Td;
  const double lm = Td * (static_cast<double>(K) - spd_solve(sigma0, sigma1).trace());
  DiagnosticResult r;
  r.test_name = "Breusch-Godfrey LM";
  r.statistic = lm;
  r.df = static_cast<int>(K * K * h);
  r.p_value = chi_square_sf(lm, r.df);
  r.lags = h;
  return r;
}

bool CusumResult::stable() const {
  return std::none_of(equations.begin(), equations.end(), [](const CusumProcess& e) { return e.crossed; });
}

CusumResult ols_cusum(const VarModel& m, double boundary) {
  CusumResult out;
  out.boundary = boundary;
  const Eigen::Index T = m.t_eff();
  const double dof = static_cast<double>(T - m.regressors());
  for (int i = 0; i < m.K; ++i) {
    CusumProcess proc;
    proc.equation = m.names[static_cast<std::size_t>(i)];
    const auto u = m.residuals.col(i);
    const double sigma = std::sqrt(u.squaredNorm() / dof);
    if (!(sigma > 0)) throw DegenerateDataError("OLS-CUSUM: equation " + proc.equation + " has zero residual variance");
    const double scale = 1.0 / (sigma * std::sqrt(static_cast<double>(T)));
    proc.t.reserve(static_cast<std::size_t>(T) + 1);
    proc.w.reserve(static_cast<std::size_t>(T) + 1);
    proc.t.push_back(0.0);
    proc.w.push_back(0.0);
    double acc = 0;
    for (Eigen::Index s = 0; s < T; ++s) {
      acc += u(s);
      const double w = acc * scale;
      proc.t.push_back(static_cast<double>(s + 1) / static_cast<double>(T));
      proc.w.push_back(w);
      proc.sup_abs = std::max(proc.sup_abs, std::abs(w));
    }
    proc.crossed = proc.sup_abs > boundary;
    out.equations.push_back(std::move(proc));
  }
  return out;
}

}  // namespace rss
