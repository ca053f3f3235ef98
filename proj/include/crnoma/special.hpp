// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace crnoma {

/// Gaussian error function and its complements.
double erf(double x) noexcept;
double erfc(double x) noexcept;
/// Scaled complement exp(x^2) * erfc(x); finite for all x > -26.
double erfcx(double x) noexcept;

/// 1 - exp(-x), accurate for small x.
double one_minus_exp_neg(double x) noexcept;

/// Integral of exp(-(c + 1) x) over [a, b]; b may be +infinity.
/// Throws DomainError if b < a, or if b is infinite and c <= -1.
double u_fn(double a, double b, double c);

/// exp(log_scale) * u_fn(a, b, c), with the scale folded into the exponent.
double u_fn_scaled(double a, double b, double c, double log_scale);

/// Integral of exp(-(A x^2 + B x)) over [a, b]. Note the upper limit comes
/// first. b may be +infinity. Throws DomainError if b < a or A < 0.
double v_fn(double b, double a, double A, double B);

/// exp(log_scale) * v_fn(b, a, A, B), with the scale folded into every
/// exponential so that large exp(B^2 / 4A) factors never materialize.
double v_fn_scaled(double b, double a, double A, double B, double log_scale);

}  // namespace crnoma
