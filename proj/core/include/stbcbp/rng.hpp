#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace stbcbp {

// Counter-based random stream (Philox4x32-10). A stream is identified by a
// 64-bit key plus three fixed counter words; the fourth counter word indexes
// successive output blocks. Distinct (key, c0, c1, c2) tuples yield
// statistically independent streams, which is what makes frame-parallel
// Monte-Carlo runs bit-identical to serial ones: every frame owns a stream
// derived from (seed, snr, frame) and never shares generator state.
//
// Output is identical on every platform; no standard-library distributions
// are used anywhere downstream.
class RandomStream {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit RandomStream(std::uint64_t key, std::uint32_t c0 = 0, std::uint64_t c12 = 0)
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
        c0_(c0),
        c1_(static_cast<std::uint32_t>(c12)),
        c2_(static_cast<std::uint32_t>(c12 >> 32)) {}

  // One Philox4x32 keyed bijection, 10 rounds. Exposed for known-answer tests.
  static Block philox4x32(Block counter, Key key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // One uniformly random bit.
  bool bit() { return (next_u32() & 1u) != 0; }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Standard normal via Box-Muller; second variate of each pair is cached.
  double gaussian();

  // Circularly-symmetric complex Gaussian CN(0,1): real and imaginary parts
  // are independent N(0, 1/2). Always consumes one fresh Box-Muller pair.
  std::complex<double> complex_gaussian();

 private:
  void refill();

  Key key_;
  std::uint32_t c0_, c1_, c2_;
  std::uint32_t block_ = 0;
  Block buf_{};
  int pos_ = 4;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace stbcbp
