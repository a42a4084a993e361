#include "alphatest/dependence.hpp"

#include <cmath>
#include <string>

#include "alphatest/distributions.hpp"
#include "alphatest/errors.hpp"
#include "alphatest/kernels.hpp"

namespace alphatest {

namespace {

Vector inverse_root_diagonal(const Matrix& sigma) {
  const Vector d = sigma.diagonal();
  if (!(d.minCoeff() > 0.0)) {
    throw NonPositiveDiagonal("non-positive variance on the diagonal");
  }
  return d.cwiseSqrt().cwiseInverse();
}

}  // namespace

Matrix sample_cov(const Matrix& residuals, double dof, Execution exec) {
  if (!(dof >= 1.0)) {
    throw InputError("sample_cov: dof must be >= 1");
  }
  return exec == Execution::parallel ? kernels::omp::cross_product(residuals, dof)
                                     : kernels::reference::cross_product(residuals, dof);
}

ThresholdResult hard_threshold(const Matrix& sigma, std::size_t periods, double delta,
                               double repair_scale) {
  if (sigma.rows() != sigma.cols()) {
    throw DimensionError("hard_threshold: matrix is not square");
  }
  if (delta < 0.0) {
    throw InputError("hard_threshold: delta must be >= 0");
  }
  if (!(repair_scale > 0.0)) {
    throw InputError("hard_threshold: repair_scale must be positive");
  }
  const Eigen::Index n = sigma.rows();
  const Vector inv_sd = inverse_root_diagonal(sigma);

  ThresholdResult out;
  out.threshold = delta * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(periods));
  out.raw = sigma;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double rho = sigma(i, j) * inv_sd[i] * inv_sd[j];
      if (std::abs(rho) >= out.threshold) {
        ++out.survivors;
      } else {
        out.raw(i, j) = 0.0;
        out.raw(j, i) = 0.0;
      }
    }
  }
  out.sigma = psd_repair(out.raw, repair_scale * sigma.diagonal().maxCoeff());
  out.repaired = out.sigma != out.raw;
  return out;
}

Matrix correlation_from_cov(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols()) {
    throw DimensionError("correlation_from_cov: matrix is not square");
  }
  const Vector inv_sd = inverse_root_diagonal(sigma);
  Matrix r = inv_sd.asDiagonal() * sigma * inv_sd.asDiagonal();
  r.diagonal().setOnes();
  return r;
}

Matrix precision_root(const Matrix& r_hat) { return inv_sqrt_psd(r_hat); }

MtCorrelation mt_rho_bar_sq(const Matrix& sigma_hat, double dof, double q_mt, double delta_mt) {
  const Eigen::Index n = sigma_hat.rows();
  if (n < 2 || sigma_hat.cols() != n) {
    throw DimensionError("mt_rho_bar_sq: need a square matrix with N >= 2");
  }
  if (!(dof > 4.0)) {
    throw DegenerateDof("mt_rho_bar_sq: need v > 4");
  }
  const Vector inv_sd = inverse_root_diagonal(sigma_hat);
  const double level = q_mt / (2.0 * std::pow(static_cast<double>(n), delta_mt));

  MtCorrelation out;
  out.mt_threshold = normal_quantile(1.0 - level);
  const double root_dof = std::sqrt(dof);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double rho = sigma_hat(i, j) * inv_sd[i] * inv_sd[j];
      if (root_dof * std::abs(rho) >= out.mt_threshold) {
        sum += rho * rho;
        ++out.survivors;
      }
    }
  }
  const auto nd = static_cast<double>(n);
  out.rho_bar_sq = 2.0 * sum / (nd * (nd - 1.0));
  return out;
}

DependenceEstimate estimate_dependence(const OlsFit& fit, std::size_t periods,
                                       const DependenceConfig& config, Execution exec) {
  DependenceEstimate out;
  out.sigma_hat = sample_cov(fit.residuals, fit.dof, exec);
  out.mt = mt_rho_bar_sq(out.sigma_hat, fit.dof, config.q_mt, config.delta_mt);
  const auto n = out.sigma_hat.rows();
  if (config.identity_precision) {
    out.sigma_thresholded = out.sigma_hat.diagonal().asDiagonal();
    out.r_hat = Matrix::Identity(n, n);
    out.omega_root = Matrix::Identity(n, n);
    return out;
  }
  // Threshold and repair on the correlation scale so that the floor means the
  // same thing whatever the variances are.
  const Matrix r_sample = correlation_from_cov(out.sigma_hat);
  ThresholdResult thr =
      hard_threshold(r_sample, periods, config.threshold_delta, config.eigen_floor);
  out.threshold_used = thr.threshold;
  out.r_hat = correlation_from_cov(thr.sigma);
  const Vector sd = out.sigma_hat.diagonal().cwiseSqrt();
  out.sigma_thresholded = sd.asDiagonal() * out.r_hat * sd.asDiagonal();
  out.omega_root = precision_root(out.r_hat);
  return out;
}

}  // namespace alphatest
