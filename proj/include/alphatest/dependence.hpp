#pragma once

#include <cstddef>

#include "alphatest/matrix_core.hpp"
#include "alphatest/panel_ols.hpp"

namespace alphatest {

/// Thresholding and multiple-testing tuning. The defaults correspond to a
/// correlation-scale cutoff of 2.5 sqrt(log N / T), a spectrum floor of 0.2
/// for the thresholded correlation matrix, and a pair-wise test at level
/// 0.05 / N for the correlation summary.
struct DependenceConfig {
  double threshold_delta = 2.5;
  /// Lower bound imposed on the eigenvalues of the thresholded correlation
  /// matrix. Thresholding a banded correlation usually produces an
  /// indefinite matrix, and a tiny floor lets R^{-1/2} blow up.
  double eigen_floor = 0.2;
  double q_mt = 0.05;
  double delta_mt = 1.0;
  /// Skip estimation of the precision root and use the identity instead.
  bool identity_precision = false;
};

struct ThresholdResult {
  Matrix sigma;            // thresholded and PSD-repaired
  Matrix raw;              // thresholded, before repair
  double threshold = 0.0;  // correlation-scale cutoff delta * sqrt(log N / T)
  std::size_t survivors = 0;  // off-diagonal pairs kept (i < j)
  bool repaired = false;
};

struct MtCorrelation {
  double rho_bar_sq = 0.0;
  std::size_t survivors = 0;
  double mt_threshold = 0.0;  // cutoff c(N) on the sqrt(v)|rho| scale
};

struct DependenceEstimate {
  Matrix sigma_hat;
  Matrix sigma_thresholded;
  Matrix r_hat;
  Matrix omega_root;
  double threshold_used = 0.0;
  MtCorrelation mt;
};

/// v^{-1} E E' for an N x T residual matrix.
Matrix sample_cov(const Matrix& residuals, double dof, Execution exec = Execution::parallel);

/// Zero every off-diagonal entry whose correlation is below
/// delta sqrt(log N / T) in magnitude, then repair positive definiteness with
/// epsilon = repair_scale * max diagonal.
ThresholdResult hard_threshold(const Matrix& sigma, std::size_t periods, double delta,
                               double repair_scale = 1e-4);

/// D^{-1/2} Sigma D^{-1/2}. Throws NonPositiveDiagonal.
Matrix correlation_from_cov(const Matrix& sigma);

/// Symmetric inverse square root of a correlation matrix.
Matrix precision_root(const Matrix& r_hat);

/// Average squared correlation over pairs that pass an individual
/// significance test sqrt(v)|rho_ij| >= Phi^{-1}(1 - q / (2 N^delta)).
MtCorrelation mt_rho_bar_sq(const Matrix& sigma_hat, double dof, double q_mt, double delta_mt);

/// Everything the test statistics need from the residuals of a fit.
DependenceEstimate estimate_dependence(const OlsFit& fit, std::size_t periods,
                                       const DependenceConfig& config,
                                       Execution exec = Execution::parallel);

}  // namespace alphatest
