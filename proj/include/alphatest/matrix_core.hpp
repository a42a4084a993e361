#pragma once

#include <Eigen/Dense>

namespace alphatest {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenpairs of a symmetric matrix. Eigenvalues are sorted in descending
/// order and column k of `eigenvectors` belongs to `eigenvalues[k]`.
struct SymmetricEigen {
  Vector eigenvalues;
  Matrix eigenvectors;

  double min() const { return eigenvalues[eigenvalues.size() - 1]; }
  double max() const { return eigenvalues[0]; }
};

/// Relative eigenvalue floor used by inv_sqrt_psd when none is given.
inline constexpr double kDefaultRelativeFloor = 1e-4;

/// M_F = I - F (F'F)^{-1} F', the projection onto the orthogonal complement
/// of the column space of a T x p factor matrix.
///
/// Throws DimensionError when T <= p and SingularDesign when F'F has a
/// condition number above 1e12.
Matrix annihilator(const Matrix& factors);

/// Eigendecomposition of (A + A')/2. Throws ConvergenceError if the solver
/// does not converge and DimensionError for non-square input.
SymmetricEigen sym_eigen(const Matrix& a);

Matrix reconstruct(const SymmetricEigen& eig);

/// Q diag(max(lambda, floor)^{-1/2}) Q'.
Matrix inv_sqrt_psd(const Matrix& a, double floor);

/// Same, with floor = kDefaultRelativeFloor * lambda_max.
Matrix inv_sqrt_psd(const Matrix& a);

/// Symmetric square root Q diag(sqrt(lambda)) Q'. Throws NotPositiveDefinite
/// when lambda_min <= 0.
Matrix sqrt_pd(const Matrix& a);

/// Clip the spectrum of A at epsilon. A is returned unchanged when it
/// already satisfies lambda_min >= epsilon. Otherwise the clipped matrix gets
/// the original diagonal back if that keeps lambda_min >= epsilon.
Matrix psd_repair(const Matrix& a, double epsilon);

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace alphatest
