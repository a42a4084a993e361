#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "alphatest/matrix_core.hpp"
#include "alphatest/panel_ols.hpp"
#include "alphatest/rng.hpp"

namespace alphatest {

/// AR(1) mean with GARCH(1,1) innovations for each of three factors:
///   f_kt = a_k + b_k f_k,t-1 + sqrt(h_kt) zeta_kt
///   h_kt = c_k + d_k h_k,t-1 + e_k zeta_k,t-1^2
/// Defaults mimic the market, SMB and HML factors.
struct FactorProcessParams {
  std::array<double, 3> a{0.53, 0.19, 0.19};
  std::array<double, 3> b{0.06, 0.19, 0.05};
  std::array<double, 3> c{0.89, 0.62, 0.80};
  std::array<double, 3> d{0.85, 0.74, 0.76};
  std::array<double, 3> e{0.11, 0.19, 0.15};
  std::size_t burn_in = 50;
  double f_init = 0.0;
  double h_init = 1.0;
};

inline constexpr std::size_t kFactorCount = 3;

/// T x 3 factor path driven by a (burn_in + T) x 3 matrix of standard
/// normal shocks; row 0 of `shocks` is period -burn_in + 1.
Matrix gen_factors_from_shocks(std::size_t periods, const FactorProcessParams& params,
                               const Matrix& shocks);

Matrix gen_factors(std::size_t periods, const FactorProcessParams& params, Philox& rng);

enum class CovModel { M1, M2, M3, M4 };

std::string_view to_string(CovModel m);
std::optional<CovModel> cov_model_from_string(std::string_view name);

/// Parameters of the four error covariance designs.
///   M1: Sigma_ij = base^|i-j|
///   M2: Sigma = D^{1/2} (I + bb' - diag(b^2)) D^{1/2}, D_ii ~ U(1, 2), and
///       floor(N^0.3) random entries of b ~ U(0.7, 0.9)
///   M3: Sigma = Omega^{-1}, Omega_ij = base^|i-j|
///   M4: Sigma = gg' + (I - rho W)^{-1} (I - rho W')^{-1}, the first
///       floor(N^0.3) entries of g ~ U(0.7, 0.9), W the rook matrix
struct CovModelSpec {
  CovModel kind = CovModel::M1;
  double m1_base = 0.7;
  double m3_base = 0.6;
  double diag_low = 1.0;
  double diag_high = 2.0;
  double spike_exponent = 0.3;
  double spike_low = 0.7;
  double spike_high = 0.9;
  double rook_rho = 0.5;

  static CovModelSpec of(CovModel kind) {
    CovModelSpec s;
    s.kind = kind;
    return s;
  }
  /// M1 and M3 do not consume randomness.
  bool is_random() const { return kind == CovModel::M2 || kind == CovModel::M4; }
};

/// Rook weight matrix: 0.5 on both off-diagonals, rows 1 and N carry a single
/// unit weight on their only neighbour.
Matrix rook_matrix(std::size_t n);

/// Builds Sigma and checks positive definiteness (NotPositiveDefinite).
Matrix build_cov(const CovModelSpec& spec, std::size_t n, Philox& rng);

/// Symmetric square root. Throws NotPositiveDefinite.
Matrix cov_sqrt(const Matrix& sigma);

enum class ErrorDist { normal, t5_scaled, mixture_scaled };

std::string_view to_string(ErrorDist d);
std::optional<ErrorDist> error_dist_from_string(std::string_view name);

/// One standardized draw: N(0,1), t(5)/sqrt(5/3), or
/// {0.9 N(0,1) + 0.1 N(0,9)}/sqrt(1.8).
double draw_standardized(ErrorDist dist, Philox& rng);

/// N x T errors, column t equal to sigma_root * z_t.
Matrix gen_errors(const Matrix& sigma_root, ErrorDist dist, std::size_t periods, Philox& rng);

/// Uniform ranges of the three loading columns.
inline constexpr std::array<std::array<double, 2>, 3> kBetaRanges{
    {{0.2, 2.0}, {-1.0, 1.5}, {-1.5, 1.5}}};

Matrix gen_betas(std::size_t n, Philox& rng);

struct AlphaSpec {
  Vector alpha;
  std::vector<std::size_t> support;  // sorted
  double magnitude = 0.0;            // sqrt(10 log N / (m T)), 0 under the null
};

/// Random support of size m with equal entries, so that
/// ||alpha||^2 = 10 log N / T whatever m is.
AlphaSpec gen_alpha(std::size_t n, std::size_t m, std::size_t periods, Philox& rng);

/// Same magnitudes on a fixed support.
AlphaSpec alpha_on_support(std::size_t n, std::vector<std::size_t> support, std::size_t periods);

/// Y = alpha 1' + B F' + E.
FactorPanel assemble_panel(const Vector& alpha, const Matrix& betas, const Matrix& factors,
                           const Matrix& errors);

}  // namespace alphatest
