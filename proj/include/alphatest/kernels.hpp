#pragma once

// Data-parallel inner loops of the testing pipeline.
//
// Every kernel has a plain serial reference in `reference::` and an OpenMP
// version in `omp::`. The OpenMP versions split work over independent rows
// and keep the per-entry reduction order of the reference, so their output is
// bitwise identical to it for any thread count.

#include "alphatest/matrix_core.hpp"

namespace alphatest::kernels {

struct Residualized {
  Vector alpha;      // Y_i' M_F 1 / (1' M_F 1)
  Matrix residuals;  // M_F (Y_i - alpha_i 1), one row per security
  Vector sigma;      // residual sum of squares / dof
};

namespace reference {

Residualized residualize(const Matrix& returns, const Matrix& m_f, double leverage,
                         double dof);

/// rows * rows' / divisor.
Matrix cross_product(const Matrix& rows, double divisor);

}  // namespace reference

namespace omp {

Residualized residualize(const Matrix& returns, const Matrix& m_f, double leverage,
                         double dof);

Matrix cross_product(const Matrix& rows, double divisor);

}  // namespace omp

}  // namespace alphatest::kernels
