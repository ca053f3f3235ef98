// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "crnoma/random.hpp"

using namespace crnoma;

TEST_CASE("Philox4x32-10 known answers") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::bijection(B{0, 0, 0, 0}, {0, 0}) ==
        B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::bijection(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::bijection(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("generator streams") {
  Philox4x32 a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    CHECK(x == b());
  }
  std::set<std::uint32_t> firsts{Philox4x32(1, 0)(), c(), d()};
  CHECK(firsts.size() == 3);

  // Usable with standard distributions.
  Philox4x32 g(3);
  std::uniform_int_distribution<int> die(1, 6);
  const int roll = die(g);
  CHECK(roll >= 1);
  CHECK(roll <= 6);
}

TEST_CASE("uniform and exponential variates") {
  Philox4x32 g(11);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double u = g.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double e = g.exponential();
    REQUIRE(e >= 0.0);
    REQUIRE(std::isfinite(e));
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 1.0) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sum_sq / n - 2.0) < 0.03);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  static_assert(splitmix64(0) == 0xE220A8397B1DCDAFull);
}
