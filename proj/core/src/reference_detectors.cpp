#include "stbcbp/reference_detectors.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace stbcbp {

void validate(const LinearSystem& sys) {
  if (sys.h.rows() != sys.y.size())
    throw std::invalid_argument("linear system: y length must match rows of h");
  if (!(sys.sigma2 > 0.0)) throw std::invalid_argument("linear system: sigma2 must be > 0");
}

namespace {

// True if a comes before b with +1 ordered first.
bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) > b(i);
  return false;
}

}  // namespace

Eigen::VectorXi ml_detect(const LinearSystem& sys) {
  validate(sys);
  const int K = static_cast<int>(sys.h.cols());
  if (K < 1 || K > kMlMaxK)
    throw std::invalid_argument("ml_detect: K exceeds the enumeration guard");

  Eigen::VectorXi x = Eigen::VectorXi::Ones(K);
  Eigen::VectorXcd v = sys.y - sys.h.rowwise().sum();  // residual at all-ones
  const Eigen::MatrixXcd h2 = 2.0 * sys.h;

  Eigen::VectorXi best_x = x;
  double best = v.squaredNorm();
  const std::uint32_t total = 1u << K;
  for (std::uint32_t s = 1; s < total; ++s) {
    const int j = std::countr_zero(s);
    if (x(j) == 1) {
      x(j) = -1;
      v += h2.col(j);
    } else {
      x(j) = 1;
      v -= h2.col(j);
    }
    const double n2 = v.squaredNorm();
    if (n2 < best || (n2 == best && lex_less(x, best_x))) {
      best = n2;
      best_x = x;
    }
  }
  return best_x;
}

Eigen::ArrayX2d exact_marginals(const MrfModel& model) {
  const int K = model.K;
  if (K < 1 || K > kMarginalsMaxK)
    throw std::invalid_argument("exact_marginals: K exceeds the enumeration guard");

  const std::uint32_t total = 1u << K;
  std::vector<double> lw(total);
  double lw_max = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    double w = 0.0;
    for (int i = 0; i < K; ++i) {
      const int ai = (mask >> i) & 1;
      w += model.log_phi(i, ai);
      for (int j = i + 1; j < K; ++j) w += model.log_psi_at(i, j, ai, (mask >> j) & 1);
    }
    lw[mask] = w;
    lw_max = std::max(lw_max, w);
  }

  Eigen::ArrayX2d marg = Eigen::ArrayX2d::Zero(K, 2);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    const double w = std::exp(lw[mask] - lw_max);
    for (int i = 0; i < K; ++i) marg(i, (mask >> i) & 1) += w;
  }
  for (int i = 0; i < K; ++i) {
    const double s = marg(i, 0) + marg(i, 1);
    marg(i, 0) /= s;
    marg(i, 1) /= s;
  }
  return marg;
}

Eigen::VectorXi mf_detect(const MrfModel& model) {
  Eigen::VectorXi hard(model.K);
  for (int i = 0; i < model.K; ++i) hard(i) = model.z(i).real() >= 0.0 ? +1 : -1;
  return hard;
}

Eigen::VectorXi mmse_detect(const LinearSystem& sys) {
  validate(sys);
  const int K = static_cast<int>(sys.h.cols());
  Eigen::MatrixXcd a = sys.h.adjoint() * sys.h;
  a.diagonal().array() += sys.sigma2;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw std::logic_error("mmse_detect: regularized normal matrix not factorizable");
  const Eigen::VectorXcd w = ldlt.solve(sys.h.adjoint() * sys.y);
  Eigen::VectorXi hard(K);
  for (int i = 0; i < K; ++i) hard(i) = w(i).real() >= 0.0 ? +1 : -1;
  return hard;
}

}  // namespace stbcbp
