#include "alphatest/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "alphatest/errors.hpp"

namespace alphatest {

namespace {

std::size_t spike_count(std::size_t n, double exponent) {
  // Integer part; the small offset keeps exact powers such as 1024^0.3 = 8
  // from rounding down.
  return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), exponent) + 1e-9));
}

Matrix toeplitz_power(std::size_t n, double base) {
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix out(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) {
      out(i, j) = std::pow(base, static_cast<double>(std::abs(i - j)));
    }
  }
  return out;
}

/// First k indices of a uniformly shuffled 0..n-1, sorted.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Philox& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void check_positive_definite(const Matrix& sigma, std::string_view model) {
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("build_cov: " + std::string(model) +
                              " covariance is not positive definite");
  }
}

}  // namespace

Matrix gen_factors_from_shocks(std::size_t periods, const FactorProcessParams& params,
                               const Matrix& shocks) {
  const std::size_t total = params.burn_in + periods;
  if (static_cast<std::size_t>(shocks.rows()) != total ||
      static_cast<std::size_t>(shocks.cols()) != kFactorCount) {
    throw DimensionError("gen_factors: shock matrix must be (burn_in + T) x 3");
  }
  Matrix out(static_cast<Eigen::Index>(periods), static_cast<Eigen::Index>(kFactorCount));
  for (std::size_t k = 0; k < kFactorCount; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    double f = params.f_init;
    double h = params.h_init;
    double zeta_prev = 0.0;
    for (std::size_t r = 0; r < total; ++r) {
      const double zeta = shocks(static_cast<Eigen::Index>(r), col);
      h = params.c[k] + params.d[k] * h + params.e[k] * zeta_prev * zeta_prev;
      f = params.a[k] + params.b[k] * f + std::sqrt(h) * zeta;
      zeta_prev = zeta;
      if (r >= params.burn_in) {
        out(static_cast<Eigen::Index>(r - params.burn_in), col) = f;
      }
    }
  }
  return out;
}

Matrix gen_factors(std::size_t periods, const FactorProcessParams& params, Philox& rng) {
  Matrix shocks(static_cast<Eigen::Index>(params.burn_in + periods),
                static_cast<Eigen::Index>(kFactorCount));
  for (Eigen::Index r = 0; r < shocks.rows(); ++r) {
    for (Eigen::Index k = 0; k < shocks.cols(); ++k) {
      shocks(r, k) = rng.normal();
    }
  }
  return gen_factors_from_shocks(periods, params, shocks);
}

std::string_view to_string(CovModel m) {
  switch (m) {
    case CovModel::M1: return "M1";
    case CovModel::M2: return "M2";
    case CovModel::M3: return "M3";
    case CovModel::M4: return "M4";
  }
  return "?";
}

std::optional<CovModel> cov_model_from_string(std::string_view name) {
  for (CovModel m : {CovModel::M1, CovModel::M2, CovModel::M3, CovModel::M4}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

Matrix rook_matrix(std::size_t n) {
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix w = Matrix::Zero(ni, ni);
  for (Eigen::Index i = 1; i + 1 < ni; ++i) {
    w(i, i - 1) = 0.5;
    w(i, i + 1) = 0.5;
  }
  w(0, 1) = 1.0;
  w(ni - 1, ni - 2) = 1.0;
  return w;
}

Matrix build_cov(const CovModelSpec& spec, std::size_t n, Philox& rng) {
  if (n < 2) {
    throw DimensionError("build_cov: need N >= 2");
  }
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix sigma;
  switch (spec.kind) {
    case CovModel::M1:
      sigma = toeplitz_power(n, spec.m1_base);
      break;
    case CovModel::M2: {
      Vector sd(ni);
      for (Eigen::Index i = 0; i < ni; ++i) {
        sd[i] = std::sqrt(rng.uniform(spec.diag_low, spec.diag_high));
      }
      Vector b = Vector::Zero(ni);
      for (std::size_t i : random_subset(n, spike_count(n, spec.spike_exponent), rng)) {
        b[static_cast<Eigen::Index>(i)] = rng.uniform(spec.spike_low, spec.spike_high);
      }
      Matrix r = b * b.transpose();
      r.diagonal().setOnes();
      sigma = sd.asDiagonal() * r * sd.asDiagonal();
      break;
    }
    case CovModel::M3: {
      const Matrix omega = toeplitz_power(n, spec.m3_base);
      sigma = symmetrize(omega.ldlt().solve(Matrix::Identity(ni, ni)));
      break;
    }
    case CovModel::M4: {
      Vector g = Vector::Zero(ni);
      const auto spikes = static_cast<Eigen::Index>(spike_count(n, spec.spike_exponent));
      for (Eigen::Index i = 0; i < spikes; ++i) {
        g[i] = rng.uniform(spec.spike_low, spec.spike_high);
      }
      const Matrix a = Matrix::Identity(ni, ni) - spec.rook_rho * rook_matrix(n);
      const Matrix a_inv = a.partialPivLu().solve(Matrix::Identity(ni, ni));
      sigma = symmetrize(g * g.transpose() + a_inv * a_inv.transpose());
      break;
    }
  }
  check_positive_definite(sigma, to_string(spec.kind));
  return sigma;
}

Matrix cov_sqrt(const Matrix& sigma) { return sqrt_pd(sigma); }

std::string_view to_string(ErrorDist d) {
  switch (d) {
    case ErrorDist::normal: return "normal";
    case ErrorDist::t5_scaled: return "t5";
    case ErrorDist::mixture_scaled: return "mixture";
  }
  return "?";
}

std::optional<ErrorDist> error_dist_from_string(std::string_view name) {
  for (ErrorDist d : {ErrorDist::normal, ErrorDist::t5_scaled, ErrorDist::mixture_scaled}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

double draw_standardized(ErrorDist dist, Philox& rng) {
  switch (dist) {
    case ErrorDist::normal:
      return rng.normal();
    case ErrorDist::t5_scaled: {
      const double z = rng.normal();
      double chi2 = 0.0;
      for (int k = 0; k < 5; ++k) {
        const double x = rng.normal();
        chi2 += x * x;
      }
      // t(5) has variance 5/3.
      return z / std::sqrt(chi2 / 5.0) / std::sqrt(5.0 / 3.0);
    }
    case ErrorDist::mixture_scaled: {
      const bool wide = rng.uniform() < 0.1;
      const double z = rng.normal();
      return (wide ? 3.0 * z : z) / std::sqrt(1.8);
    }
  }
  return 0.0;
}

Matrix gen_errors(const Matrix& sigma_root, ErrorDist dist, std::size_t periods, Philox& rng) {
  const Eigen::Index n = sigma_root.rows();
  Matrix z(n, static_cast<Eigen::Index>(periods));
  for (Eigen::Index t = 0; t < z.cols(); ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i, t) = draw_standardized(dist, rng);
    }
  }
  return sigma_root * z;
}

Matrix gen_betas(std::size_t n, Philox& rng) {
  Matrix betas(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kFactorCount));
  for (Eigen::Index i = 0; i < betas.rows(); ++i) {
    for (Eigen::Index k = 0; k < betas.cols(); ++k) {
      const auto& range = kBetaRanges[static_cast<std::size_t>(k)];
      betas(i, k) = rng.uniform(range[0], range[1]);
    }
  }
  return betas;
}

AlphaSpec alpha_on_support(std::size_t n, std::vector<std::size_t> support,
                           std::size_t periods) {
  AlphaSpec out;
  out.alpha = Vector::Zero(static_cast<Eigen::Index>(n));
  out.support = std::move(support);
  std::sort(out.support.begin(), out.support.end());
  const std::size_t m = out.support.size();
  if (m == 0) return out;
  if (m > n || out.support.back() >= n) {
    throw DimensionError("alpha_on_support: support does not fit N");
  }
  out.magnitude = std::sqrt(10.0 * std::log(static_cast<double>(n)) /
                            (static_cast<double>(m) * static_cast<double>(periods)));
  for (std::size_t i : out.support) {
    out.alpha[static_cast<Eigen::Index>(i)] = out.magnitude;
  }
  return out;
}

AlphaSpec gen_alpha(std::size_t n, std::size_t m, std::size_t periods, Philox& rng) {
  if (m > n) {
    throw DimensionError("gen_alpha: m exceeds N");
  }
  return alpha_on_support(n, random_subset(n, m, rng), periods);
}

FactorPanel assemble_panel(const Vector& alpha, const Matrix& betas, const Matrix& factors,
                           const Matrix& errors) {
  if (betas.rows() != alpha.size() || errors.rows() != alpha.size() ||
      betas.cols() != factors.cols() || errors.cols() != factors.rows()) {
    throw DimensionError("assemble_panel: inconsistent dimensions");
  }
  Matrix y = betas * factors.transpose() + errors;
  y.colwise() += alpha;
  return FactorPanel(std::move(y), factors);
}

}  // namespace alphatest
