#pragma once

#include "pigc/data.hpp"

namespace pigc {

/// Linear map from feature coordinates back to input space:
/// y_t ≈ gamma · η_t.
struct PreimageMap {
  Matrix gamma;  // D×P
  double ridge_lambda = 0.0;
  // Mean squared reconstruction error over all T·D training entries.
  double training_fit_error = 0.0;
};

// Least squares for gamma from paired rows of y (T×D) and h (T×P).
PreimageMap learn_preimage(const Matrix& y, const Matrix& h, double ridge_lambda);

// Row t of the result is gamma · hhat_t.
Matrix reconstruct(const PreimageMap& map, const Matrix& hhat);

}  // namespace pigc
