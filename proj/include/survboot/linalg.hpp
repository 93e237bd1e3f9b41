#pragma once

#include <Eigen/Core>

namespace survboot {

/// Lower Cholesky factor of a symmetric positive-definite matrix.
/// Throws NotPositiveDefinite when a pivot falls at or below 1e-12,
/// and DimensionMismatch when the input is not square-symmetric
/// (within 1e-10).
Eigen::MatrixXd cholesky(const Eigen::MatrixXd& a);

/// Solve a * x = b for symmetric positive-definite a.
Eigen::VectorXd solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

} // namespace survboot
