#pragma once

#include <vector>

#include "pigc/data.hpp"

namespace pigc {

/// Interceptless VAR(L) fit: x_t = sum_l A^l x_{t-l} + e_t.
struct VarModelFit {
  std::vector<Matrix> coefficients;  // A^1 .. A^L, each D×D
  double ridge_lambda = 0.0;
  Matrix residuals;                  // (T-L)×D
  Vector residual_variance;          // population variance of each residual column
  int lag = 1;

  Eigen::Index dimension() const {
    return coefficients.empty() ? 0 : coefficients.front().rows();
  }
};

VarModelFit fit_var(const Matrix& series, int lag, double ridge_lambda);

// One-step in-sample predictions for t = L .. T-1.
Matrix predict(const VarModelFit& fit, const Matrix& series);

// Population variance of each column of (y - yhat) about its own mean.
Vector residual_variance_about(const Matrix& y, const Matrix& yhat);

// Solves min ||targets - design*B||^2 + lambda ||B||^2 column by column.
// lambda == 0 uses a rank-revealing QR and raises kRank when the design is
// column-rank deficient. Shared by the VAR and pre-image fits.
Matrix solve_ridge(const Matrix& design, const Matrix& targets, double lambda,
                   const char* what);

}  // namespace pigc
