// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace crnoma {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario parameters (M, powers, rates).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Closed-form evaluation refused, e.g. M above the alternating-sum cap.
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Conditional probability with a vanishing denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its panel budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Monte Carlo asked for fewer than one trial.
class TrialCountError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace crnoma
