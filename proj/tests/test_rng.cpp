#include <doctest.h>

#include <cmath>

#include "stbcbp/rng.hpp"

using stbcbp::RandomStream;

TEST_CASE("philox4x32-10 matches the published known-answer vectors") {
  CHECK(RandomStream::philox4x32({0u, 0u, 0u, 0u}, {0u, 0u}) ==
        RandomStream::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(RandomStream::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu}) ==
        RandomStream::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(RandomStream::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                 {0xa4093822u, 0x299f31d0u}) ==
        RandomStream::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("identical stream coordinates reproduce identical output") {
  RandomStream a(12345, 7, 99);
  RandomStream b(12345, 7, 99);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());
}

TEST_CASE("distinct counter prefixes give distinct streams") {
  RandomStream a(1, 0, 0);
  RandomStream b(1, 0, 1);
  RandomStream c(1, 1, 0);
  int differ_ab = 0, differ_ac = 0;
  for (int i = 0; i < 16; ++i) {
    const auto va = a.next_u32();
    differ_ab += va != b.next_u32();
    differ_ac += va != c.next_u32();
  }
  CHECK(differ_ab > 0);
  CHECK(differ_ac > 0);
}

TEST_CASE("uniform01 stays in [0,1) and covers the range") {
  RandomStream rng(2024);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("complex gaussian has unit power and balanced parts") {
  RandomStream rng(99);
  const int n = 100000;
  double p = 0.0, pre = 0.0, pim = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto g = rng.complex_gaussian();
    p += std::norm(g);
    pre += g.real() * g.real();
    pim += g.imag() * g.imag();
  }
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(pre / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(pim / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("scalar gaussian pairs are standard normal") {
  RandomStream rng(7);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}
