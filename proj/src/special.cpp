// SPDX-License-Identifier: Apache-2.0

#include "crnoma/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crnoma/error.hpp"
#include "crnoma/quadrature.hpp"

namespace crnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// exp(x^2) with the rounding error of x*x carried separately.
double exp_square(double x) noexcept {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo);
}

// Asymptotic expansion, accurate to double precision for x >= 26.
double erfcx_large(double x) noexcept {
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

// Integral of x^2 e^{s - B x} over [a, b], b possibly infinite (then B > 0).
double second_moment(double a, double b, double B, double s) {
  auto antiderivative = [&](double x) {
    return std::exp(s - B * x) * (x * x / B + 2.0 * x / (B * B) + 2.0 / (B * B * B));
  };
  if (b == kInf) return antiderivative(a);
  if (std::abs(B) * (b - a) >= 1.0) return antiderivative(a) - antiderivative(b);
  // Near-polynomial integrand: one Gauss-Kronrod panel is exact to rounding.
  auto f = [&](double x) { return x * x * std::exp(s - B * x); };
  return detail::gauss_kronrod_15(f, a, b).value;
}

}  // namespace

double erf(double x) noexcept { return std::erf(x); }

double erfc(double x) noexcept { return std::erfc(x); }

double erfcx(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 * exp_square(x) - erfcx(-x);
  if (x < 26.0) return exp_square(x) * std::erfc(x);
  return erfcx_large(x);
}

double one_minus_exp_neg(double x) noexcept { return -std::expm1(-x); }

double u_fn_scaled(double a, double b, double c, double log_scale) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(c)) throw DomainError("u_fn: NaN argument");
  if (b < a) throw DomainError("u_fn: upper limit below lower limit");
  if (b == a) return 0.0;
  const double k = c + 1.0;
  if (b == kInf) {
    if (k <= 0.0) throw DomainError("u_fn: divergent integral (c <= -1 with infinite limit)");
    return std::exp(log_scale - a * k) / k;
  }
  const double width = b - a;
  if (k == 0.0) return std::exp(log_scale) * width;
  return std::exp(log_scale - a * k) * (-std::expm1(-width * k)) / k;
}

double u_fn(double a, double b, double c) { return u_fn_scaled(a, b, c, 0.0); }

double v_fn_scaled(double b, double a, double A, double B, double log_scale) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(A) || std::isnan(B)) {
    throw DomainError("v_fn: NaN argument");
  }
  if (b < a) throw DomainError("v_fn: upper limit below lower limit");
  if (A < 0.0) throw DomainError("v_fn: negative quadratic coefficient");
  if (b == a) return 0.0;
  if (A == 0.0) return u_fn_scaled(a, b, B - 1.0, log_scale);
  // When A x^2 stays tiny over the range that matters, the erfcx form cancels.
  // Use e^{-A x^2} ~ 1 - A x^2 instead.
  const double far = b != kInf ? std::max(std::abs(a), std::abs(b))
                     : B > 0.0 ? std::abs(a) + 50.0 / B
                               : kInf;
  if (A * far * far <= 1e-8) {
    return u_fn_scaled(a, b, B - 1.0, log_scale) - A * second_moment(a, b, B, log_scale);
  }

  const double root_a = std::sqrt(A);
  const double k = std::sqrt(std::numbers::pi) / (2.0 * root_a);
  const double offset = B / (2.0 * root_a);
  const bool finite_upper = b != kInf;

  // e^{s - (A x^2 + B x)} at the limits; erfc(w) e^{B^2/4A} = erfcx(w) * that.
  const double w_lo = root_a * a + offset;
  const double e_lo = std::exp(log_scale - a * (A * a + B));
  const double w_hi = finite_upper ? root_a * b + offset : kInf;
  const double e_hi = finite_upper ? std::exp(log_scale - b * (A * b + B)) : 0.0;
  const double tail_hi = finite_upper ? erfcx(w_hi) * e_hi : 0.0;

  if (w_lo >= 0.0) return k * (erfcx(w_lo) * e_lo - tail_hi);
  if (finite_upper && w_hi <= 0.0) return k * (erfcx(-w_hi) * e_hi - erfcx(-w_lo) * e_lo);
  // The vertex of the quadratic lies inside (a, b).
  const double peak = std::exp(log_scale + B * B / (4.0 * A));
  return k * (2.0 * peak - tail_hi - erfcx(-w_lo) * e_lo);
}

double v_fn(double b, double a, double A, double B) { return v_fn_scaled(b, a, A, B, 0.0); }

}  // namespace crnoma
