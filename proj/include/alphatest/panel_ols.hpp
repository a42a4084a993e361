#pragma once

#include <cstddef>

#include "alphatest/matrix_core.hpp"

namespace alphatest {

enum class Execution { serial, parallel };

/// Observed data of a linear factor pricing model: an N x T matrix of
/// security returns and a T x p matrix of factor realizations.
class FactorPanel {
 public:
  /// Validates N >= 2, T >= p + 6, matching T, and finite entries.
  FactorPanel(Matrix returns, Matrix factors);

  const Matrix& returns() const { return returns_; }
  const Matrix& factors() const { return factors_; }
  std::size_t securities() const { return static_cast<std::size_t>(returns_.rows()); }
  std::size_t periods() const { return static_cast<std::size_t>(returns_.cols()); }
  std::size_t factor_count() const { return static_cast<std::size_t>(factors_.cols()); }

  bool operator==(const FactorPanel& other) const;

 private:
  Matrix returns_;
  Matrix factors_;
};

struct OlsFit {
  Vector alpha_hat;
  Matrix residuals;  // N x T
  Vector sigma_hat;  // residual variances with divisor dof
  /// t-ratios; left empty by fit() when some residual
  /// variance is below kMinResidualVariance (exact fit).
  Vector t_stats;
  int dof = 0;            // T - p - 1
  double leverage = 0.0;  // 1' M_F 1
};

inline constexpr double kMinResidualVariance = 1e-14;

/// Security-by-security OLS of returns on an intercept and the factors.
///
/// Throws DegenerateDesign when the intercept is (nearly) collinear with the
/// factors and SingularDesign when F'F is singular.
OlsFit fit(const FactorPanel& panel, Execution exec = Execution::parallel);

/// t_i = alpha_i sqrt(1' M_F 1) / sqrt(sigma_ii). Throws ZeroResidualVariance
/// if any sigma_ii < kMinResidualVariance.
Vector t_ratios(const OlsFit& fit);

}  // namespace alphatest
