#pragma once

#include <Eigen/Dense>

#include "stbcbp/rng.hpp"

namespace stbcbp {

enum class FadingModel { Iid, Kronecker };

struct ChannelConfig {
  int n_t = 1;
  int n_r = 1;
  double snr_db = 0.0;  // average received SNR per receive antenna, dB
  double es = 1.0;      // average energy of the transmitted (matrix-entry) symbols
  FadingModel model = FadingModel::Iid;
  double corr_r = 0.0;  // exponential correlation coefficient, 0 <= r < 1
};

// One quasi-static fading realization; valid for exactly one code-matrix
// duration.
struct ChannelRealization {
  Eigen::MatrixXcd h_c;  // N_r x N_t
  double sigma2 = 0.0;   // complex noise variance per received entry
};

void validate(const ChannelConfig& cfg);

// sigma^2 = N_t * E_s / gamma with gamma the linear per-receive-antenna SNR.
double snr_to_sigma2(const ChannelConfig& cfg);

// [R]_ab = r^|a-b|.
Eigen::MatrixXd exponential_correlation(int m, double r);

// Symmetric PSD square root via eigendecomposition (negative eigenvalues
// from roundoff are clamped to zero).
Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m);

// Caches the correlation shaping matrices so repeated draws don't refactor
// them. Draws are pure functions of the supplied stream.
class ChannelModel {
 public:
  explicit ChannelModel(const ChannelConfig& cfg);
  ChannelRealization draw(RandomStream& rng) const;
  const ChannelConfig& config() const { return cfg_; }
  double sigma2() const { return sigma2_; }

 private:
  ChannelConfig cfg_;
  double sigma2_;
  bool shaped_ = false;        // false for IID and for Kronecker with r == 0
  Eigen::MatrixXcd rx_shape_;  // R_rx^{1/2}
  Eigen::MatrixXcd tx_shape_;  // R_tx^{1/2}
};

// IID: entries i.i.d. CN(0,1). Kronecker: R_rx^{1/2} H_w R_tx^{1/2} with
// exponential single-parameter correlation on both sides. Entries are drawn
// in column-major order.
ChannelRealization draw_channel(const ChannelConfig& cfg, RandomStream& rng);

// h_c * x + noise, noise entries i.i.d. CN(0, sigma2).
Eigen::MatrixXcd apply_channel(const ChannelRealization& real, const Eigen::MatrixXcd& x,
                               RandomStream& rng);

}  // namespace stbcbp
