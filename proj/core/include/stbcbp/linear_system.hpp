#pragma once

#include <Eigen/Dense>

namespace stbcbp {

// y = H x + n with x in {+-1}^K and complex noise of variance sigma2 per
// entry. Both linearized STBC systems and plain V-BLAST systems take this
// shape.
struct LinearSystem {
  Eigen::VectorXcd y;
  Eigen::MatrixXcd h;
  double sigma2 = 1.0;
};

void validate(const LinearSystem& sys);

}  // namespace stbcbp
