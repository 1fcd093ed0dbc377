#include "pigc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pigc/error.hpp"

namespace pigc {

KernelSpec KernelSpec::rbf(double bandwidth) {
  KernelSpec s;
  s.kind = KernelKind::kRbf;
  s.bandwidth = bandwidth;
  return s;
}

KernelSpec KernelSpec::linear() {
  KernelSpec s;
  s.kind = KernelKind::kLinear;
  return s;
}

KernelSpec KernelSpec::polynomial(int degree, double offset) {
  KernelSpec s;
  s.kind = KernelKind::kPolynomial;
  s.degree = degree;
  s.offset = offset;
  return s;
}

void KernelSpec::validate() const {
  if (kind == KernelKind::kRbf && !(bandwidth > 0.0 && std::isfinite(bandwidth))) {
    throw Error(ErrorKind::kConfig, "rbf bandwidth must be positive, got " +
                                        std::to_string(bandwidth));
  }
  if (kind == KernelKind::kPolynomial && degree < 1) {
    throw Error(ErrorKind::kConfig, "polynomial degree must be >= 1, got " +
                                        std::to_string(degree));
  }
}

double kernel_value(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                    const Eigen::Ref<const Vector>& z) {
  switch (spec.kind) {
    case KernelKind::kRbf: {
      double sq = 0.0;
      for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double d = x[k] - z[k];
        sq += d * d;
      }
      return std::exp(-sq / (2.0 * spec.bandwidth * spec.bandwidth));
    }
    case KernelKind::kLinear: {
      double dot = 0.0;
      for (Eigen::Index k = 0; k < x.size(); ++k) dot += x[k] * z[k];
      return dot;
    }
    case KernelKind::kPolynomial: {
      double dot = 0.0;
      for (Eigen::Index k = 0; k < x.size(); ++k) dot += x[k] * z[k];
      return std::pow(dot + spec.offset, spec.degree);
    }
  }
  return 0.0;
}

namespace {

void check_gram_inputs(const KernelSpec& spec, const Matrix& x, const Matrix& z) {
  spec.validate();
  if (x.cols() != z.cols()) {
    throw Error(ErrorKind::kShape, "gram: column counts differ (" + std::to_string(x.cols()) +
                                       " vs " + std::to_string(z.cols()) + ")");
  }
}

}  // namespace

Matrix gram_serial(const KernelSpec& spec, const Matrix& x, const Matrix& z) {
  check_gram_inputs(spec, x, z);
  // Row-major copies so each kernel evaluation reads contiguous memory.
  const Matrix xt = x.transpose();
  const Matrix zt = z.transpose();
  Matrix k(x.rows(), z.rows());
  for (Eigen::Index m = 0; m < x.rows(); ++m)
    for (Eigen::Index q = 0; q < z.rows(); ++q)
      k(m, q) = kernel_value(spec, xt.col(m), zt.col(q));
  return k;
}

Matrix gram(const KernelSpec& spec, const Matrix& x, const Matrix& z) {
  check_gram_inputs(spec, x, z);
  const Matrix xt = x.transpose();
  const Matrix zt = z.transpose();
  Matrix k(x.rows(), z.rows());
  const Eigen::Index rows = x.rows();
#pragma omp parallel for schedule(static) if (rows * z.rows() > 4096)
  for (Eigen::Index m = 0; m < rows; ++m)
    for (Eigen::Index q = 0; q < z.rows(); ++q)
      k(m, q) = kernel_value(spec, xt.col(m), zt.col(q));
  return k;
}

double median_bandwidth(const Matrix& x) {
  const Eigen::Index m = x.rows();
  if (m < 2) {
    throw Error(ErrorKind::kDegenerateInput, "median bandwidth needs at least 2 points");
  }
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b) dist.push_back((x.row(a) - x.row(b)).norm());
  const auto n = dist.size();
  const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  double median = *mid;
  if (n % 2 == 0) {
    const double below = *std::max_element(dist.begin(), mid);
    median = 0.5 * (median + below);
  }
  if (!(median > 0.0)) {
    // More than half the pairs coincide; fall back to the smallest
    // nonzero distance before declaring the input degenerate.
    double smallest = 0.0;
    for (double d : dist)
      if (d > 0.0 && (smallest == 0.0 || d < smallest)) smallest = d;
    if (smallest == 0.0) {
      throw Error(ErrorKind::kDegenerateInput, "all points identical; bandwidth undefined");
    }
    median = smallest;
  }
  return median;
}

KernelPcaModel fit_kernel_pca(const KernelSpec& spec, const Matrix& x,
                              const ComponentSelection& selection) {
  const Eigen::Index m = x.rows();
  if (m < 2) throw Error(ErrorKind::kInsufficientSamples, "kernel PCA needs at least 2 points");
  if (const auto* c = std::get_if<ComponentCount>(&selection.rule)) {
    if (c->count < 1 || c->count > m) {
      throw Error(ErrorKind::kConfig, "component count " + std::to_string(c->count) +
                                          " outside [1, " + std::to_string(m) + "]");
    }
  } else {
    const double rho = std::get<VarianceFraction>(selection.rule).fraction;
    if (!(rho > 0.0 && rho <= 1.0)) {
      throw Error(ErrorKind::kConfig, "variance fraction must lie in (0, 1]");
    }
  }

  KernelPcaModel model;
  model.spec_ = spec;
  model.training_points_ = x;

  const Matrix k = gram(spec, x, x);
  model.gram_row_means_ = k.rowwise().mean();
  model.gram_total_mean_ = model.gram_row_means_.mean();
  Matrix centered = k;
  centered.colwise() -= model.gram_row_means_;
  centered.rowwise() -= model.gram_row_means_.transpose();
  centered.array() += model.gram_total_mean_;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(centered);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kRank, "eigendecomposition of the centered Gram matrix failed");
  }
  const Vector& ascending = solver.eigenvalues();
  const double top = ascending[m - 1];
  const double floor = 1e-12 * std::max(1.0, k.cwiseAbs().maxCoeff() * static_cast<double>(m));
  Eigen::Index rank = 0;
  if (top > floor) {
    const double cutoff = 1e-10 * top;
    while (rank < m && ascending[m - 1 - rank] > cutoff) ++rank;
  }
  model.spectrum_.resize(rank);
  for (Eigen::Index p = 0; p < rank; ++p) model.spectrum_[p] = ascending[m - 1 - p];

  Eigen::Index keep = 0;
  if (const auto* c = std::get_if<ComponentCount>(&selection.rule)) {
    keep = c->count;
    if (keep > rank) {
      if (!selection.cap_at_rank || rank == 0) {
        throw Error(ErrorKind::kRank, "requested " + std::to_string(keep) +
                                          " components but the centered Gram matrix has rank " +
                                          std::to_string(rank));
      }
      keep = rank;
    }
  } else {
    if (rank == 0) {
      throw Error(ErrorKind::kRank, "centered Gram matrix has rank 0; no variance to explain");
    }
    const double rho = std::get<VarianceFraction>(selection.rule).fraction;
    const double total = model.spectrum_.sum();
    double cumulative = 0.0;
    while (keep < rank) {
      cumulative += model.spectrum_[keep];
      ++keep;
      if (cumulative >= rho * total) break;
    }
  }
  if (selection.max_components > 0)
    keep = std::min<Eigen::Index>(keep, selection.max_components);

  model.eigenvalues_ = model.spectrum_.head(keep);
  model.dual_coefficients_.resize(m, keep);
  for (Eigen::Index p = 0; p < keep; ++p) {
    Vector v = solver.eigenvectors().col(m - 1 - p);
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    if (v[at] < 0.0) v = -v;
    model.dual_coefficients_.col(p) = v / std::sqrt(model.eigenvalues_[p]);
  }
  return model;
}

Matrix KernelPcaModel::project(const Matrix& x) const {
  if (x.cols() != training_points_.cols()) {
    throw Error(ErrorKind::kShape, "project: expected " + std::to_string(training_points_.cols()) +
                                       " columns, got " + std::to_string(x.cols()));
  }
  Matrix k = gram(spec_, x, training_points_);
  const Vector own_means = k.rowwise().mean();
  k.colwise() -= own_means;
  k.rowwise() -= gram_row_means_.transpose();
  k.array() += gram_total_mean_;
  return k * dual_coefficients_;
}

}  // namespace pigc
