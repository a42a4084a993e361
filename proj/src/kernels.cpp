#include "alphatest/kernels.hpp"

#include <cstddef>
#include <vector>

namespace alphatest::kernels {

namespace {

// Row i of (Y_i - alpha_i 1) M_F, accumulated over s in ascending order.
void residual_row(const Matrix& returns, const Matrix& m_f, const Vector& m_one,
                  double leverage, double dof, Eigen::Index i, Residualized& out) {
  const Eigen::Index t_len = returns.cols();
  double a = 0.0;
  for (Eigen::Index s = 0; s < t_len; ++s) {
    a += returns(i, s) * m_one[s];
  }
  a /= leverage;
  out.alpha[i] = a;

  std::vector<double> centered(static_cast<std::size_t>(t_len));
  for (Eigen::Index s = 0; s < t_len; ++s) {
    centered[static_cast<std::size_t>(s)] = returns(i, s) - a;
  }

  double ss = 0.0;
  for (Eigen::Index t = 0; t < t_len; ++t) {
    // m_f is symmetric; walk column t contiguously.
    const double* col = m_f.col(t).data();
    double e = 0.0;
    for (Eigen::Index s = 0; s < t_len; ++s) {
      e += centered[static_cast<std::size_t>(s)] * col[s];
    }
    out.residuals(i, t) = e;
    ss += e * e;
  }
  out.sigma[i] = ss / dof;
}

Vector row_sums(const Matrix& m_f) {
  Vector m_one(m_f.rows());
  for (Eigen::Index s = 0; s < m_f.rows(); ++s) {
    double acc = 0.0;
    for (Eigen::Index t = 0; t < m_f.cols(); ++t) {
      acc += m_f(s, t);
    }
    m_one[s] = acc;
  }
  return m_one;
}

Residualized allocate(const Matrix& returns) {
  Residualized out;
  out.alpha.resize(returns.rows());
  out.residuals.resize(returns.rows(), returns.cols());
  out.sigma.resize(returns.rows());
  return out;
}

double dot_columns(const Matrix& cols, Eigen::Index i, Eigen::Index j) {
  const double* a = cols.col(i).data();
  const double* b = cols.col(j).data();
  double acc = 0.0;
  for (Eigen::Index t = 0; t < cols.rows(); ++t) {
    acc += a[t] * b[t];
  }
  return acc;
}

}  // namespace

namespace reference {

Residualized residualize(const Matrix& returns, const Matrix& m_f, double leverage,
                         double dof) {
  Residualized out = allocate(returns);
  const Vector m_one = row_sums(m_f);
  for (Eigen::Index i = 0; i < returns.rows(); ++i) {
    residual_row(returns, m_f, m_one, leverage, dof, i, out);
  }
  return out;
}

Matrix cross_product(const Matrix& rows, double divisor) {
  const Eigen::Index n = rows.rows();
  const Matrix cols = rows.transpose();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = dot_columns(cols, i, j) / divisor;
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace reference

namespace omp {

Residualized residualize(const Matrix& returns, const Matrix& m_f, double leverage,
                         double dof) {
  Residualized out = allocate(returns);
  const Vector m_one = row_sums(m_f);
  const Eigen::Index n = returns.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    residual_row(returns, m_f, m_one, leverage, dof, i, out);
  }
  return out;
}

Matrix cross_product(const Matrix& rows, double divisor) {
  const Eigen::Index n = rows.rows();
  const Matrix cols = rows.transpose();
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = dot_columns(cols, i, j) / divisor;
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace omp

}  // namespace alphatest::kernels
