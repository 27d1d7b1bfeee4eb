#include <doctest.h>

#include <cmath>

#include "stbcbp/channel.hpp"
#include "test_util.hpp"

using namespace stbcbp;

TEST_CASE("snr to sigma2 arithmetic") {
  CHECK(snr_to_sigma2({.n_t = 4, .n_r = 4, .snr_db = 0.0}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(snr_to_sigma2({.n_t = 16, .n_r = 16, .snr_db = 10.0}) ==
        doctest::Approx(1.6).epsilon(1e-12));
  CHECK(snr_to_sigma2({.n_t = 1, .n_r = 1, .snr_db = 300.0}) < 1e-25);  // noiseless limit
  CHECK_THROWS_AS(snr_to_sigma2({.n_t = 0, .n_r = 1}), std::invalid_argument);
  CHECK_THROWS_AS(snr_to_sigma2({.n_t = 1, .n_r = 1, .snr_db = 0.0, .es = 0.0}),
                  std::invalid_argument);
}

TEST_CASE("exponential correlation matrix") {
  const Eigen::MatrixXd c = exponential_correlation(2, 0.12);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(1, 1) == 1.0);
  CHECK(c(0, 1) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(c(1, 0) == doctest::Approx(0.12).epsilon(1e-15));

  const Eigen::MatrixXd c4 = exponential_correlation(4, 0.5);
  CHECK(c4(0, 3) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("psd square root squares back to the input") {
  for (const double r : {0.12, 0.5, 0.9}) {
    const Eigen::MatrixXd c = exponential_correlation(6, r);
    const Eigen::MatrixXd s = matrix_sqrt_psd(c);
    CHECK((s * s - c).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("kronecker model with r=0 draws bit-identically to iid") {
  const ChannelConfig iid{.n_t = 3, .n_r = 4, .snr_db = 6.0, .es = 1.0, .model = FadingModel::Iid};
  ChannelConfig kron = iid;
  kron.model = FadingModel::Kronecker;
  kron.corr_r = 0.0;

  RandomStream a(5, 1, 0), b(5, 1, 0);
  const auto ha = draw_channel(iid, a);
  const auto hb = draw_channel(kron, b);
  CHECK(ha.h_c == hb.h_c);
  CHECK(ha.sigma2 == hb.sigma2);
}

TEST_CASE("fixed stream coordinates give bit-identical draws") {
  const ChannelConfig cfg{.n_t = 2, .n_r = 2, .snr_db = 10.0};
  RandomStream a(77, 3, 9), b(77, 3, 9);
  const auto ra = draw_channel(cfg, a);
  const auto rb = draw_channel(cfg, b);
  CHECK(ra.h_c == rb.h_c);

  const Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(apply_channel(ra, x, a) == apply_channel(rb, x, b));
}

TEST_CASE("iid entries have unit average power") {
  const ChannelConfig cfg{.n_t = 4, .n_r = 4, .snr_db = 0.0};
  RandomStream rng(21);
  double p = 0.0;
  const int draws = 6250;  // 1e5 entries
  for (int i = 0; i < draws; ++i) p += draw_channel(cfg, rng).h_c.squaredNorm();
  CHECK(p / (draws * 16.0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("kronecker receive-side correlation matches r^|a-b|") {
  const double r = 0.12;
  const int n_r = 4, n_t = 4;
  const ChannelConfig cfg{
      .n_t = n_t, .n_r = n_r, .snr_db = 0.0, .es = 1.0, .model = FadingModel::Kronecker, .corr_r = r};
  ChannelModel model(cfg);
  RandomStream rng(22);

  const int draws = 20000;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n_r, n_r);
  for (int i = 0; i < draws; ++i) {
    const auto h = model.draw(rng).h_c;
    acc += h * h.adjoint();
  }
  acc /= static_cast<double>(draws * n_t);
  const double tol = 3.0 * std::sqrt(2.0 / (draws * n_t));  // 3 sigma for the covariance estimate
  for (int a = 0; a < n_r; ++a)
    for (int b = 0; b < n_r; ++b)
      CHECK(std::abs(acc(a, b) - std::pow(r, std::abs(a - b))) < tol);
}

TEST_CASE("apply_channel adds noise of the configured variance") {
  ChannelRealization real{Eigen::MatrixXcd::Zero(4, 4), 2.5};
  RandomStream rng(23);
  double p = 0.0;
  const int draws = 6250;
  const Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < draws; ++i) p += apply_channel(real, x, rng).squaredNorm();
  CHECK(p / (draws * 16.0) == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("noiseless apply returns h_c times the input") {
  RandomStream rng(24);
  const Eigen::MatrixXcd h = testutil::random_cmatrix(3, 3, rng);
  ChannelRealization real{h, 0.0};
  const Eigen::MatrixXcd y = apply_channel(real, Eigen::MatrixXcd::Identity(3, 3), rng);
  CHECK((y - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
  RandomStream rng(25);
  ChannelRealization real{testutil::random_cmatrix(2, 3, rng), 1.0};
  CHECK_THROWS_AS(apply_channel(real, Eigen::MatrixXcd::Ones(2, 2), rng), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)ChannelModel({.n_t = 2, .n_r = 2, .snr_db = 0, .es = 1.0,
                          .model = FadingModel::Kronecker, .corr_r = 1.0}),
      std::invalid_argument);
}
