#pragma once

#include <Eigen/Core>
#include <vector>

namespace hhcarbon {

/// Least-squares solution on the linearly independent subset of columns,
/// chosen greedily left to right: a column is dropped when its component
/// orthogonal to the already-kept columns has norm at most `rel_tol` times
/// its own norm.
struct LeastSquares {
  std::vector<int> kept;
  std::vector<int> dropped;
  Eigen::VectorXd beta;       // one entry per kept column
  Eigen::MatrixXd r;          // upper-triangular factor, kept x kept
  Eigen::VectorXd residuals;  // y - X_kept * beta

  /// (R^T R)^{-1}, i.e. (X_kept^T X_kept)^{-1}.
  Eigen::MatrixXd unscaled_covariance() const;
};

LeastSquares householder_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double rel_tol = 1e-9);

}  // namespace hhcarbon
