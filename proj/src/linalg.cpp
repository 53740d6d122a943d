#include "rss/linalg.hpp"

#include <string>

#include "rss/error.hpp"

namespace rss {

LeastSquaresFit least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double max_condition) {
  const auto n = X.rows();
  const auto k = X.cols();
  if (n < k) throw DegenerateDataError("least squares: fewer observations than regressors");
  if (Y.rows() != n) throw InputError("least squares: X and Y row counts differ");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < k)
    throw NumericalError("rank-deficient design matrix (rank " + std::to_string(qr.rank()) + " < " + std::to_string(k) + ")");

  const Eigen::MatrixXd R = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(R).singularValues();
  LeastSquaresFit fit;
  fit.condition = sv(0) / sv(k - 1);
  if (!(fit.condition <= max_condition))
    throw NumericalError("ill-conditioned design matrix (condition number " + std::to_string(fit.condition) + ")");

  fit.coef = qr.solve(Y);
  fit.residuals = Y - X * fit.coef;
  const Eigen::MatrixXd r_inv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd pivoted = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  fit.xtx_inv = perm * pivoted * perm.transpose();
  return fit;
}

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& b) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw NumericalError("covariance matrix is not positive definite");
  const Eigen::VectorXd d = ldlt.vectorD();
  if (d.minCoeff() <= d.maxCoeff() * 1e-14) throw NumericalError("covariance matrix is singular");
  return ldlt.solve(b);
}

}  // namespace rss
