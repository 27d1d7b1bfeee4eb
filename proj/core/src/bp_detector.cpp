#include "stbcbp/bp_detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stbcbp {

namespace {

using cd = std::complex<double>;

const double kLogPsiFloor = std::log(kPsiFloor);
constexpr double kMinPrior = 1e-300;  // keeps ln p finite; phi stays strictly positive

inline double lse(double a, double b) {
  const double m = std::max(a, b);
  if (!std::isfinite(m)) return m;
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

void check_prior(const Eigen::ArrayX2d& prior, int K) {
  if (prior.rows() != K) throw std::invalid_argument("mrf: prior must have K rows");
  for (int i = 0; i < K; ++i) {
    if (prior(i, 0) < 0.0 || prior(i, 1) < 0.0)
      throw std::invalid_argument("mrf: prior entries must be non-negative");
    if (std::abs(prior(i, 0) + prior(i, 1) - 1.0) > 1e-9)
      throw std::invalid_argument("mrf: prior rows must sum to 1");
  }
}

Eigen::ArrayX2d uniform_prior(int K) {
  return Eigen::ArrayX2d::Constant(K, 2, 0.5);
}

}  // namespace

MrfModel build_mrf_from_moments(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& r_mat,
                                const Eigen::ArrayX2d& prior, const MrfOptions& opt) {
  const int K = static_cast<int>(z.size());
  if (r_mat.rows() != K || r_mat.cols() != K)
    throw std::invalid_argument("mrf: r_mat must be K x K");
  check_prior(prior, K);
  const double scale = std::max(1.0, r_mat.cwiseAbs().maxCoeff());
  if ((r_mat - r_mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("mrf: r_mat must be Hermitian");

  MrfModel model;
  model.K = K;
  model.z = z;
  model.r_mat = r_mat;
  model.prior = prior;

  model.log_phi.resize(K, 2);
  for (int i = 0; i < K; ++i) {
    const double re_z = z(i).real();
    for (int a = 0; a < 2; ++a)
      model.log_phi(i, a) = kBpsk[a] * re_z + std::log(std::max(prior(i, a), kMinPrior));
  }

  model.log_psi.assign(static_cast<std::size_t>(K) * K * 4, 0.0);
  auto at = [&](int i, int j, int a, int b) -> double& {
    return model.log_psi[(static_cast<std::size_t>(i) * K + j) * 4 + a * 2 + b];
  };
  for (int i = 0; i < K; ++i) {
    for (int j = i + 1; j < K; ++j) {
      const double re = r_mat(i, j).real();
      const double im = r_mat(i, j).imag();
      // psi depends on x_i*x_j only: cos is even, so the cos factor is shared.
      double lp[2];  // index by s = x_i*x_j: 0 -> +1, 1 -> -1
      for (int si = 0; si < 2; ++si) {
        const double s = kBpsk[si];
        double lraw;
        if (opt.psi_form == PsiForm::RealOfExp) {
          const double cosv = std::cos(im);  // cos(s*im) == cos(im)
          lraw = cosv > 0.0 ? -s * re + std::log(cosv)
                            : -std::numeric_limits<double>::infinity();
          if (lraw < kLogPsiFloor) {
            lraw = kLogPsiFloor;
            model.clamp_events += 2;  // two (a,b) combos share each s
          }
        } else {
          lraw = -s * re;
        }
        lp[si] = lraw;
      }
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double v = lp[a == b ? 0 : 1];
          at(i, j, a, b) = v;
          at(j, i, b, a) = v;  // swap consistency holds exactly by construction
        }
      }
    }
  }
  return model;
}

MrfModel build_mrf(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h, double sigma2,
                   const Eigen::ArrayX2d& prior, const MrfOptions& opt) {
  if (h.rows() != y.size())
    throw std::invalid_argument("mrf: y length must match rows of h");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("mrf: sigma2 must be positive");
  const int K = static_cast<int>(h.cols());
  const double inv = 1.0 / sigma2;
  Eigen::VectorXcd z = inv * (h.adjoint() * y);
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(K, K);
  r.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint(), inv);
  r = r.selfadjointView<Eigen::Lower>();
  return build_mrf_from_moments(z, r, prior, opt);
}

MrfModel build_mrf(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h, double sigma2,
                   const MrfOptions& opt) {
  return build_mrf(y, h, sigma2, uniform_prior(static_cast<int>(h.cols())), opt);
}

MrfModel build_mrf(const LinearSystem& sys, const MrfOptions& opt) {
  return build_mrf(sys.y, sys.h, sys.sigma2, opt);
}

MrfModel build_mrf_stbc(const Eigen::MatrixXcd& y_c, const Eigen::MatrixXcd& h_c,
                        const CdaCode& code, double sigma2, const MrfOptions& opt) {
  const int n = code.spec.n;
  const int K = code.spec.k;
  if (h_c.cols() != n) throw std::invalid_argument("mrf stbc: h_c must have n columns");
  if (y_c.rows() != h_c.rows() || y_c.cols() != n)
    throw std::invalid_argument("mrf stbc: y_c must be N_r x n");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("mrf stbc: sigma2 must be positive");

  const Eigen::MatrixXcd g = h_c.adjoint() * y_c;  // n x n
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n, n);
  f.selfadjointView<Eigen::Lower>().rankUpdate(h_c.adjoint(), 1.0);
  f = f.selfadjointView<Eigen::Lower>();

  // Support row and value of weight matrix i in column c.
  Eigen::MatrixXi rows(K, n);
  Eigen::MatrixXcd vals(K, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int i = u * n + v;
      const Eigen::MatrixXcd& a = code.weights.matrices[i];
      for (int c = 0; c < n; ++c) {
        const int r = (u + c) % n;
        rows(i, c) = r;
        vals(i, c) = a(r, c);
      }
    }
  }

  const double inv = 1.0 / sigma2;
  Eigen::VectorXcd z(K);
  for (int i = 0; i < K; ++i) {
    cd acc{0.0, 0.0};
    for (int c = 0; c < n; ++c) acc += std::conj(vals(i, c)) * g(rows(i, c), c);
    z(i) = inv * acc;
  }

  Eigen::MatrixXcd r_mat(K, K);
  for (int i = 0; i < K; ++i) {
    for (int j = i; j < K; ++j) {
      cd acc{0.0, 0.0};
      for (int c = 0; c < n; ++c)
        acc += std::conj(vals(i, c)) * f(rows(i, c), rows(j, c)) * vals(j, c);
      acc *= inv;
      if (i == j) {
        r_mat(i, i) = cd{acc.real(), 0.0};
      } else {
        r_mat(i, j) = acc;
        r_mat(j, i) = std::conj(acc);
      }
    }
  }
  return build_mrf_from_moments(z, r_mat, uniform_prior(K), opt);
}

MessageState initial_messages(const MrfModel& model) {
  MessageState st;
  st.K = model.K;
  st.iteration = 0;
  const double half = std::log(0.5);
  for (int a = 0; a < 2; ++a) {
    st.log_m[a] = Eigen::MatrixXd::Constant(model.K, model.K, half);
    st.log_m[a].diagonal().setZero();
  }
  return st;
}

void iterate(const MrfModel& model, MessageState& state, double damping) {
  const int K = model.K;
  if (state.K != K) throw std::invalid_argument("iterate: state does not match model");
  if (!(damping >= 0.0 && damping <= 1.0))
    throw std::invalid_argument("iterate: damping must be in [0,1]");
  if (damping == 1.0) {  // exact identity
    ++state.iteration;
    return;
  }

  // Incoming log-message sums per node (diagonals are zero).
  Eigen::ArrayX2d s_sum(K, 2);
  s_sum.col(0) = state.log_m[0].colwise().sum().transpose().array();
  s_sum.col(1) = state.log_m[1].colwise().sum().transpose().array();

  Eigen::MatrixXd next[2] = {Eigen::MatrixXd::Zero(K, K), Eigen::MatrixXd::Zero(K, K)};
  for (int i = 0; i < K; ++i) {
    const double* lpsi_i = model.log_psi.data() + static_cast<std::size_t>(i) * K * 4;
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      // m_{j,i}(x_i) from the snapshot: psi_{j,i}(x_j,x_i) == psi_{i,j}(x_i,x_j).
      const double* lp = lpsi_i + static_cast<std::size_t>(j) * 4;
      const double c0 = model.log_phi(j, 0) + s_sum(j, 0) - state.log_m[0](i, j);
      const double c1 = model.log_phi(j, 1) + s_sum(j, 1) - state.log_m[1](i, j);
      double l0 = lse(lp[0] + c0, lp[1] + c1);
      double l1 = lse(lp[2] + c0, lp[3] + c1);
      const double norm = lse(l0, l1);
      l0 -= norm;
      l1 -= norm;
      if (damping > 0.0) {
        l0 = std::log(damping * std::exp(state.log_m[0](j, i)) + (1.0 - damping) * std::exp(l0));
        l1 = std::log(damping * std::exp(state.log_m[1](j, i)) + (1.0 - damping) * std::exp(l1));
      }
      next[0](j, i) = l0;
      next[1](j, i) = l1;
    }
  }
  state.log_m[0].swap(next[0]);
  state.log_m[1].swap(next[1]);
  ++state.iteration;
}

namespace {

Eigen::ArrayX2d log_beliefs(const MrfModel& model, const MessageState& state) {
  const int K = model.K;
  Eigen::ArrayX2d lb(K, 2);
  lb.col(0) = model.log_phi.col(0) + state.log_m[0].colwise().sum().transpose().array();
  lb.col(1) = model.log_phi.col(1) + state.log_m[1].colwise().sum().transpose().array();
  for (int i = 0; i < K; ++i) {
    const double norm = lse(lb(i, 0), lb(i, 1));
    lb(i, 0) -= norm;
    lb(i, 1) -= norm;
  }
  return lb;
}

}  // namespace

Eigen::ArrayX2d beliefs(const MrfModel& model, const MessageState& state) {
  if (state.K != model.K) throw std::invalid_argument("beliefs: state does not match model");
  return log_beliefs(model, state).exp();
}

DetectionResult detect(const MrfModel& model, const BpOptions& opt) {
  if (opt.iterations < 1) throw std::invalid_argument("detect: iterations must be >= 1");
  MessageState state = initial_messages(model);
  for (int it = 0; it < opt.iterations; ++it) iterate(model, state, opt.damping);
  const Eigen::ArrayX2d lb = log_beliefs(model, state);

  DetectionResult res;
  res.beliefs = lb.exp();
  res.llr = (lb.col(0) - lb.col(1)).matrix();
  res.hard.resize(model.K);
  for (int i = 0; i < model.K; ++i) res.hard(i) = res.llr(i) >= 0.0 ? +1 : -1;
  return res;
}

}  // namespace stbcbp
