#include "alphatest/panel_ols.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "alphatest/errors.hpp"
#include "alphatest/kernels.hpp"

namespace alphatest {

FactorPanel::FactorPanel(Matrix returns, Matrix factors)
    : returns_(std::move(returns)), factors_(std::move(factors)) {
  const auto n = returns_.rows();
  const auto t = returns_.cols();
  const auto p = factors_.cols();
  if (n < 2) {
    throw DimensionError("FactorPanel: need at least 2 securities, got " + std::to_string(n));
  }
  if (factors_.rows() != t) {
    throw ShapeMismatch("FactorPanel: returns have T=" + std::to_string(t) +
                        " periods but factors have " + std::to_string(factors_.rows()));
  }
  if (p < 1) {
    throw DimensionError("FactorPanel: need at least one factor");
  }
  if (t < p + 6) {
    throw TooFewObservations("FactorPanel: need T >= p + 6, got T=" + std::to_string(t) +
                             ", p=" + std::to_string(p));
  }
  if (!returns_.allFinite() || !factors_.allFinite()) {
    throw InputError("FactorPanel: non-finite entry");
  }
}

bool FactorPanel::operator==(const FactorPanel& other) const {
  return returns_.rows() == other.returns_.rows() && returns_.cols() == other.returns_.cols() &&
         factors_.cols() == other.factors_.cols() && returns_ == other.returns_ &&
         factors_ == other.factors_;
}

OlsFit fit(const FactorPanel& panel, Execution exec) {
  const Matrix m_f = annihilator(panel.factors());
  const auto t = static_cast<double>(panel.periods());
  const double leverage = m_f.sum();
  if (!(leverage > 1e-10 * t)) {
    throw DegenerateDesign("fit: intercept is collinear with the factors (1'M_F 1 = " +
                           std::to_string(leverage) + ")");
  }

  OlsFit out;
  out.dof = static_cast<int>(panel.periods() - panel.factor_count() - 1);
  out.leverage = leverage;
  kernels::Residualized r =
      exec == Execution::parallel
          ? kernels::omp::residualize(panel.returns(), m_f, leverage, out.dof)
          : kernels::reference::residualize(panel.returns(), m_f, leverage, out.dof);
  out.alpha_hat = std::move(r.alpha);
  out.residuals = std::move(r.residuals);
  out.sigma_hat = std::move(r.sigma);
  if (out.sigma_hat.minCoeff() >= kMinResidualVariance) {
    out.t_stats = t_ratios(out);
  }
  return out;
}

Vector t_ratios(const OlsFit& fit) {
  if (fit.sigma_hat.size() == 0 || fit.sigma_hat.minCoeff() < kMinResidualVariance) {
    throw ZeroResidualVariance("t_ratios: residual variance below 1e-14 (exact fit)");
  }
  const double root_leverage = std::sqrt(fit.leverage);
  return (fit.alpha_hat.array() * root_leverage / fit.sigma_hat.array().sqrt()).matrix();
}

}  // namespace alphatest
