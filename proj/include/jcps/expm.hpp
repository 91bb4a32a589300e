#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace jcps::linalg {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

/// exp(A) by scaling and squaring with a truncated Taylor series.
///
/// A is scaled by 2^-s until its 1-norm is at most 1/2; the series is summed
/// until the term norm falls below tol * 2^-s so the squared result carries
/// roughly `tol` absolute error. Throws NumericalError if the series has not
/// converged after 60 terms or the result is not finite.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a, double tol = 1e-12);

/// exp(A) * V for a sparse generator, without forming exp(A).
///
/// Splits the exponent into steps with step-norm at most one and applies a
/// Taylor series per step; each series runs to machine precision.
Eigen::MatrixXcd expm_action(const SparseMatrix& a, const Eigen::MatrixXcd& v);

}  // namespace jcps::linalg
