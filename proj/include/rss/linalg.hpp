#pragma once

#include <Eigen/Dense>

namespace rss {

struct LeastSquaresFit {
  Eigen::MatrixXd coef;       // k x m
  Eigen::MatrixXd residuals;  // n x m
  Eigen::MatrixXd xtx_inv;    // (X'X)^{-1}, k x k, from the triangular factor
  double condition = 1.0;     // 2-norm condition number of X
};

inline constexpr double kMaxCondition = 1e12;

// Column-pivoted QR least squares for every column of Y at once.
// Throws NumericalError when X is rank deficient or its condition number exceeds `max_condition`.
LeastSquaresFit least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                              double max_condition = kMaxCondition);

// Solves the symmetric positive definite system A x = b via LDLT; throws NumericalError if A is singular.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& b);

}  // namespace rss
