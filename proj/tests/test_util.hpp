#pragma once

#include <Eigen/Dense>

#include "stbcbp/rng.hpp"

namespace testutil {

inline Eigen::MatrixXcd random_cmatrix(int rows, int cols, stbcbp::RandomStream& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_gaussian();
  return m;
}

inline Eigen::VectorXcd random_cvector(int n, stbcbp::RandomStream& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
  return v;
}

inline Eigen::VectorXi random_bpsk(int n, stbcbp::RandomStream& rng) {
  Eigen::VectorXi v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.bit() ? -1 : +1;
  return v;
}

}  // namespace testutil
