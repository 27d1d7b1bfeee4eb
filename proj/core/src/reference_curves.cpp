#include "stbcbp/reference_curves.hpp"

#include <cmath>

namespace stbcbp {

double siso_awgn_ber(double snr_db) {
  const double gamma = std::pow(10.0, snr_db / 10.0);
  // Q(sqrt(2 gamma)) = erfc(sqrt(gamma)) / 2
  return 0.5 * std::erfc(std::sqrt(gamma));
}

double siso_rayleigh_ber(double snr_db) {
  const double gamma = std::pow(10.0, snr_db / 10.0);
  return 0.5 * (1.0 - std::sqrt(gamma / (1.0 + gamma)));
}

}  // namespace stbcbp
