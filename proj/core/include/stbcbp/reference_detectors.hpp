#pragma once

#include <Eigen/Dense>

#include "stbcbp/bp_detector.hpp"
#include "stbcbp/linear_system.hpp"

namespace stbcbp {

inline constexpr int kMlMaxK = 24;
inline constexpr int kMarginalsMaxK = 16;

// Exhaustive maximum-likelihood detection: argmin over x in {+-1}^K of
// ||y - H x||^2, enumerated in Gray-code order with O(M) incremental
// residual updates. Exact float ties break lexicographically with +1 first.
// Guarded at K <= 24.
Eigen::VectorXi ml_detect(const LinearSystem& sys);

// Exact per-node marginals of the MRF joint
// p(x) prop. prod_{i<j} psi_ij(x_i,x_j) * prod_i phi_i(x_i) by summing all
// 2^K configurations. Guarded at K <= 16. Rows sum to 1.
Eigen::ArrayX2d exact_marginals(const MrfModel& model);

// Matched-filter baseline: sign(Re z_i), ties to +1.
Eigen::VectorXi mf_detect(const MrfModel& model);

// Linear MMSE baseline: sign(Re((H^H H + sigma2 I)^-1 H^H y)), ties to +1.
Eigen::VectorXi mmse_detect(const LinearSystem& sys);

}  // namespace stbcbp
