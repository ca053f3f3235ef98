// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "crnoma/channel.hpp"
#include "crnoma/config.hpp"
#include "crnoma/quadrature.hpp"

// Numerical evaluation of every probability directly from the event
// definitions: conditioned on the primary gain g2, each event is a statement
// about the secondary gains alone, so only a 1-D integral over g2 remains.
// Nothing here depends on the closed-form expressions.

namespace crnoma::oracle {

inline constexpr double kDefaultTolerance = 1e-10;

/// P(served rate < Rs | g2). Exact for all three schemes: given g2 every
/// user's rate depends on its own gain only, so the outage is the probability
/// that all M users fall in the single-user outage set S(g2). For the PA
/// schemes S is an interval [0, x) and this is the order-statistic CDF
/// (1 - e^{-x})^M of the largest gain.
double conditional_outage_given_g(Scheme scheme, double g2, const SystemConfig& config);

/// Outage probability integrated over g2 ~ Exp(1), split at the points where
/// the conditional outage is not smooth.
QuadratureResult outage_numeric(Scheme scheme, const SystemConfig& config,
                                double abs_tol = kDefaultTolerance);

struct RegionTerm {
  std::string name;
  double value;
  double abs_error;
};

/// Disjoint pieces of the outage event, integrated separately.
///  HSIC-PA: stage_two_short, stage_one_short, all_type_one, primary_weak.
///  FSIC-PA: all_type_one, primary_weak, type_two.
/// Throws DomainError for HSIC-NPA, which has no such decomposition.
std::vector<RegionTerm> decomposition_terms(Scheme scheme, const SystemConfig& config,
                                            double abs_tol = kDefaultTolerance);

struct BetterNumeric {
  double numerator;    // P(tau/Ps < h_M < hbar^2, g2 > alpha0)
  double denominator;  // P(served user type II)
  double ratio;
};

/// Throws DegenerateError when the denominator is below 1e-300.
BetterNumeric p_better_numeric(const SystemConfig& config, double abs_tol = kDefaultTolerance);

}  // namespace crnoma::oracle
