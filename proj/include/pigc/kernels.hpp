#pragma once

#include <variant>

#include "pigc/data.hpp"

namespace pigc {

enum class KernelKind { kRbf, kLinear, kPolynomial };

/// Kernel inducing the feature map. `bandwidth` applies to rbf only,
/// `degree` and `offset` to polynomial only.
struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  double bandwidth = 1.0;
  int degree = 2;
  double offset = 1.0;

  static KernelSpec rbf(double bandwidth);
  static KernelSpec linear();
  static KernelSpec polynomial(int degree, double offset);

  // Throws kConfig when the kind-specific parameters are invalid.
  void validate() const;
};

double kernel_value(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                    const Eigen::Ref<const Vector>& z);

// K(m, q) = k(x_m, z_q). OpenMP over rows of the result.
Matrix gram(const KernelSpec& spec, const Matrix& x, const Matrix& z);

// Single-threaded reference for gram(); must agree bit-for-bit.
Matrix gram_serial(const KernelSpec& spec, const Matrix& x, const Matrix& z);

// Median of the M(M-1)/2 pairwise Euclidean distances between rows.
double median_bandwidth(const Matrix& x);

struct ComponentCount {
  int count = 1;
};
struct VarianceFraction {
  double fraction = 0.95;
};

/// How many principal components to keep. `max_components` (0 = none)
/// caps the result of either rule. With `cap_at_rank` a fixed count larger
/// than the numerical rank is silently reduced instead of raising kRank.
struct ComponentSelection {
  std::variant<ComponentCount, VarianceFraction> rule = VarianceFraction{};
  int max_components = 0;
  bool cap_at_rank = false;
};

/// Fitted kernel PCA. Immutable after fit; project() is safe to call
/// concurrently.
class KernelPcaModel {
 public:
  const KernelSpec& spec() const noexcept { return spec_; }
  const Matrix& training_points() const noexcept { return training_points_; }
  // M×P; column p is the eigenvector scaled by 1/sqrt(eigenvalue).
  const Matrix& dual_coefficients() const noexcept { return dual_coefficients_; }
  // Retained eigenvalues, descending.
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  // Every numerically nonzero eigenvalue, descending (retained or not).
  const Vector& spectrum() const noexcept { return spectrum_; }
  int components() const noexcept { return static_cast<int>(eigenvalues_.size()); }

  Matrix project(const Matrix& x) const;

 private:
  friend KernelPcaModel fit_kernel_pca(const KernelSpec&, const Matrix&,
                                       const ComponentSelection&);
  KernelSpec spec_;
  Matrix training_points_;
  Matrix dual_coefficients_;
  Vector eigenvalues_;
  Vector spectrum_;
  Vector gram_row_means_;
  double gram_total_mean_ = 0.0;
};

KernelPcaModel fit_kernel_pca(const KernelSpec& spec, const Matrix& x,
                              const ComponentSelection& selection);

inline Matrix project(const KernelPcaModel& model, const Matrix& x) {
  return model.project(x);
}

}  // namespace pigc
