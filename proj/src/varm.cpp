#include "pigc/varm.hpp"

#include <string>

#include "pigc/error.hpp"

namespace pigc {

Matrix solve_ridge(const Matrix& design, const Matrix& targets, double lambda,
                   const char* what) {
  if (!(lambda >= 0.0)) {
    throw Error(ErrorKind::kConfig, std::string(what) + ": ridge lambda must be >= 0");
  }
  if (design.rows() != targets.rows()) {
    throw Error(ErrorKind::kShape, std::string(what) + ": design has " +
                                       std::to_string(design.rows()) + " rows, targets " +
                                       std::to_string(targets.rows()));
  }
  if (lambda == 0.0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < design.cols()) {
      throw Error(ErrorKind::kRank, std::string(what) + ": design matrix has rank " +
                                        std::to_string(qr.rank()) + " < " +
                                        std::to_string(design.cols()) +
                                        " columns; use a positive ridge lambda");
    }
    return qr.solve(targets);
  }
  Matrix normal = design.transpose() * design;
  normal.diagonal().array() += lambda;
  Eigen::LLT<Matrix> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kRank, std::string(what) + ": regularized normal equations are not "
                                                      "positive definite");
  }
  return llt.solve(design.transpose() * targets);
}

namespace {

Vector column_population_variance(const Matrix& e) {
  const double n = static_cast<double>(e.rows());
  Vector out(e.cols());
  for (Eigen::Index c = 0; c < e.cols(); ++c) {
    const double mean = e.col(c).sum() / n;
    out[c] = (e.col(c).array() - mean).square().sum() / n;
  }
  return out;
}

}  // namespace

VarModelFit fit_var(const Matrix& series, int lag, double ridge_lambda) {
  const LaggedDesign lagged = lag_embed(series, lag);
  const Eigen::Index d = series.cols();
  const Matrix b = solve_ridge(lagged.design, lagged.targets, ridge_lambda, "VAR fit");

  VarModelFit fit;
  fit.lag = lag;
  fit.ridge_lambda = ridge_lambda;
  fit.coefficients.reserve(static_cast<std::size_t>(lag));
  for (int l = 0; l < lag; ++l)
    fit.coefficients.push_back(b.middleRows(l * d, d).transpose());
  fit.residuals = lagged.targets - lagged.design * b;
  fit.residual_variance = column_population_variance(fit.residuals);
  return fit;
}

Matrix predict(const VarModelFit& fit, const Matrix& series) {
  const Eigen::Index d = fit.dimension();
  if (series.cols() != d) {
    throw Error(ErrorKind::kShape, "predict: model has dimension " + std::to_string(d) +
                                       ", series has " + std::to_string(series.cols()) +
                                       " columns");
  }
  const LaggedDesign lagged = lag_embed(series, fit.lag);
  Matrix b(d * fit.lag, d);
  for (int l = 0; l < fit.lag; ++l)
    b.middleRows(l * d, d) = fit.coefficients[static_cast<std::size_t>(l)].transpose();
  return lagged.design * b;
}

Vector residual_variance_about(const Matrix& y, const Matrix& yhat) {
  if (y.rows() != yhat.rows() || y.cols() != yhat.cols()) {
    throw Error(ErrorKind::kShape, "residual variance: shapes differ");
  }
  if (y.rows() < 2) {
    throw Error(ErrorKind::kInsufficientSamples, "residual variance needs at least 2 rows");
  }
  return column_population_variance(y - yhat);
}

}  // namespace pigc
