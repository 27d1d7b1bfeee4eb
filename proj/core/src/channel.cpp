#include "stbcbp/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace stbcbp {

void validate(const ChannelConfig& cfg) {
  if (cfg.n_t < 1 || cfg.n_r < 1)
    throw std::invalid_argument("channel: n_t and n_r must be >= 1");
  if (!(cfg.es > 0.0)) throw std::invalid_argument("channel: es must be > 0");
  if (!std::isfinite(cfg.snr_db)) throw std::invalid_argument("channel: snr_db must be finite");
  if (cfg.model == FadingModel::Kronecker && !(cfg.corr_r >= 0.0 && cfg.corr_r < 1.0))
    throw std::invalid_argument("channel: corr_r must be in [0,1)");
}

double snr_to_sigma2(const ChannelConfig& cfg) {
  validate(cfg);
  return cfg.n_t * cfg.es / std::pow(10.0, cfg.snr_db / 10.0);
}

Eigen::MatrixXd exponential_correlation(int m, double r) {
  Eigen::MatrixXd c(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) c(a, b) = std::pow(r, std::abs(a - b));
  return c;
}

Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("matrix_sqrt_psd: eigendecomposition failed");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

ChannelModel::ChannelModel(const ChannelConfig& cfg) : cfg_(cfg) {
  validate(cfg_);
  sigma2_ = snr_to_sigma2(cfg_);
  shaped_ = cfg_.model == FadingModel::Kronecker && cfg_.corr_r > 0.0;
  if (shaped_) {
    rx_shape_ = matrix_sqrt_psd(exponential_correlation(cfg_.n_r, cfg_.corr_r)).cast<std::complex<double>>();
    tx_shape_ = matrix_sqrt_psd(exponential_correlation(cfg_.n_t, cfg_.corr_r)).cast<std::complex<double>>();
  }
}

ChannelRealization ChannelModel::draw(RandomStream& rng) const {
  Eigen::MatrixXcd h(cfg_.n_r, cfg_.n_t);
  for (int c = 0; c < cfg_.n_t; ++c)
    for (int r = 0; r < cfg_.n_r; ++r) h(r, c) = rng.complex_gaussian();
  if (shaped_) h = rx_shape_ * h * tx_shape_;
  return {std::move(h), sigma2_};
}

ChannelRealization draw_channel(const ChannelConfig& cfg, RandomStream& rng) {
  return ChannelModel(cfg).draw(rng);
}

Eigen::MatrixXcd apply_channel(const ChannelRealization& real, const Eigen::MatrixXcd& x,
                               RandomStream& rng) {
  if (x.rows() != real.h_c.cols())
    throw std::invalid_argument("apply_channel: input rows must match channel columns");
  Eigen::MatrixXcd y = real.h_c * x;
  const double scale = std::sqrt(real.sigma2);
  for (Eigen::Index c = 0; c < y.cols(); ++c)
    for (Eigen::Index r = 0; r < y.rows(); ++r) y(r, c) += scale * rng.complex_gaussian();
  return y;
}

}  // namespace stbcbp
