#pragma once

namespace stbcbp {

// BPSK bit error rate on a SISO AWGN channel: Q(sqrt(2*gamma)).
double siso_awgn_ber(double snr_db);

// BPSK bit error rate on a SISO flat Rayleigh-fading channel:
// 0.5 * (1 - sqrt(gamma / (1 + gamma))).
double siso_rayleigh_ber(double snr_db);

}  // namespace stbcbp
