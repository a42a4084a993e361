#include "alphatest/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alphatest/errors.hpp"

namespace alphatest {

namespace {

constexpr double kMaxDesignCondition = 1e12;

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

Matrix spectral_map(const SymmetricEigen& eig, const Vector& mapped) {
  const Matrix& q = eig.eigenvectors;
  return symmetrize(q * mapped.asDiagonal() * q.transpose());
}

}  // namespace

Matrix annihilator(const Matrix& factors) {
  const Eigen::Index t = factors.rows();
  const Eigen::Index p = factors.cols();
  if (p < 1 || t <= p) {
    throw DimensionError("annihilator: need T > p >= 1, got T=" + std::to_string(t) +
                         ", p=" + std::to_string(p));
  }
  const Matrix gram = factors.transpose() * factors;
  const SymmetricEigen eig = sym_eigen(gram);
  if (!(eig.min() > 0.0) || eig.max() / eig.min() > kMaxDesignCondition) {
    throw SingularDesign("annihilator: F'F is numerically singular");
  }
  // (F'F)^{-1} F' via the Gram eigenbasis; p is tiny.
  const Vector inv = eig.eigenvalues.cwiseInverse();
  const Matrix gram_inv = spectral_map(eig, inv);
  Matrix m = Matrix::Identity(t, t) - factors * gram_inv * factors.transpose();
  return symmetrize(m);
}

SymmetricEigen sym_eigen(const Matrix& a) {
  require_square(a, "sym_eigen");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(a));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("sym_eigen: eigensolver did not converge");
  }
  // Eigen sorts ascending; flip to descending.
  SymmetricEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Matrix reconstruct(const SymmetricEigen& eig) { return spectral_map(eig, eig.eigenvalues); }

Matrix inv_sqrt_psd(const Matrix& a, double floor) {
  if (!(floor > 0.0)) {
    throw InputError("inv_sqrt_psd: floor must be positive");
  }
  const SymmetricEigen eig = sym_eigen(a);
  const Vector mapped =
      eig.eigenvalues.unaryExpr([floor](double l) { return 1.0 / std::sqrt(std::max(l, floor)); });
  return spectral_map(eig, mapped);
}

Matrix inv_sqrt_psd(const Matrix& a) {
  const SymmetricEigen eig = sym_eigen(a);
  const double floor = kDefaultRelativeFloor * std::max(eig.max(), 0.0);
  if (!(floor > 0.0)) {
    throw NotPositiveDefinite("inv_sqrt_psd: matrix has no positive eigenvalue");
  }
  const Vector mapped =
      eig.eigenvalues.unaryExpr([floor](double l) { return 1.0 / std::sqrt(std::max(l, floor)); });
  return spectral_map(eig, mapped);
}

Matrix sqrt_pd(const Matrix& a) {
  const SymmetricEigen eig = sym_eigen(a);
  if (!(eig.min() > 0.0)) {
    throw NotPositiveDefinite("sqrt_pd: lambda_min = " + std::to_string(eig.min()));
  }
  return spectral_map(eig, eig.eigenvalues.cwiseSqrt());
}

Matrix psd_repair(const Matrix& a, double epsilon) {
  const SymmetricEigen eig = sym_eigen(a);
  if (eig.min() >= epsilon) {
    return a;
  }
  const Vector clipped_values = eig.eigenvalues.cwiseMax(epsilon);
  Matrix clipped = spectral_map(eig, clipped_values);

  Matrix restored = clipped;
  restored.diagonal() = a.diagonal();
  if (sym_eigen(restored).min() >= epsilon) {
    return restored;
  }
  return clipped;
}

}  // namespace alphatest
