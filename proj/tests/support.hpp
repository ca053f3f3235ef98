// SPDX-License-Identifier: Apache-2.0
// Reference routines local to the tests, deliberately independent of the
// library's own quadrature and special functions.

#pragma once

#include <cmath>
#include <cstdint>

namespace crnoma::testing {

/// Composite Simpson rule with `n` (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int k = 1; k < n; ++k) sum += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Minimal xorshift64* stream for drawing random test inputs.
class InputStream {
 public:
  explicit InputStream(std::uint64_t seed) : state_(seed ? seed : 1) {}
  double uniform() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return static_cast<double>((state_ * 0x2545F4914F6CDD1Dull) >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int pick(int n) { return static_cast<int>(uniform() * n) % n; }

 private:
  std::uint64_t state_;
};

}  // namespace crnoma::testing
