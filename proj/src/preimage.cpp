#include "pigc/preimage.hpp"

#include <string>

#include "pigc/error.hpp"
#include "pigc/varm.hpp"

namespace pigc {

PreimageMap learn_preimage(const Matrix& y, const Matrix& h, double ridge_lambda) {
  if (y.rows() != h.rows()) {
    throw Error(ErrorKind::kShape, "pre-image: " + std::to_string(y.rows()) +
                                       " input rows vs " + std::to_string(h.rows()) +
                                       " feature rows");
  }
  PreimageMap map;
  map.ridge_lambda = ridge_lambda;
  map.gamma = solve_ridge(h, y, ridge_lambda, "pre-image").transpose();
  map.training_fit_error = (y - h * map.gamma.transpose()).squaredNorm() /
                           static_cast<double>(y.size());
  return map;
}

Matrix reconstruct(const PreimageMap& map, const Matrix& hhat) {
  if (hhat.cols() != map.gamma.cols()) {
    throw Error(ErrorKind::kShape, "reconstruct: map expects " +
                                       std::to_string(map.gamma.cols()) + " features, got " +
                                       std::to_string(hhat.cols()));
  }
  return hhat * map.gamma.transpose();
}

}  // namespace pigc
