// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>

#include "crnoma/config.hpp"

namespace crnoma {

enum class ResultKind { Exact, Approx };

/// A closed-form probability. Exact values are guaranteed to lie in [0, 1];
/// approximations are reported as evaluated and are only guaranteed finite.
struct AnalyticResult {
  double value;
  ResultKind kind;
  std::string source;
};

/// Alternating binomial sums are refused above this many users.
inline constexpr int kMaxClosedFormUsers = 30;

// Outage of the served secondary user under hybrid SIC with power adaptation.
AnalyticResult outage_hsic_pa_exact(const SystemConfig& config);

/// High-SNR expansion of the HSIC-PA outage. The three parts satisfy
/// approx1 = first_order - second_order + leading and approx2 = leading.
struct HighSnrExpansion {
  double first_order;
  double second_order;
  double leading;
};
HighSnrExpansion hsic_pa_high_snr_expansion(const SystemConfig& config);

/// First-order high-SNR approximation; intended for P0 = Ps large.
AnalyticResult outage_hsic_pa_approx1(const SystemConfig& config);
/// Leading term eps_s^M / Ps^M, which exhibits diversity order M.
AnalyticResult outage_hsic_pa_approx2(const SystemConfig& config);

// Outage under fixed SIC with power adaptation (secondary always decoded second).
AnalyticResult outage_fsic_pa_exact(const SystemConfig& config);
AnalyticResult outage_fsic_pa_approx(const SystemConfig& config);

/// Probability that the served user's full-power signal exceeds tau(g).
AnalyticResult p_type2(const SystemConfig& config);

/// Numerator and denominator of the conditional better-rate probability.
struct BetterProbabilityParts {
  double numerator;    // P(power adaptation strictly helps, served user type II)
  double denominator;  // P(served user type II)
};
BetterProbabilityParts better_probability_parts(const SystemConfig& config);

/// P(HSIC-PA rate > HSIC-NPA rate | served user type II).
AnalyticResult p_better(const SystemConfig& config);
/// P(FSIC-PA rate > HSIC-NPA rate | served user type II); the same event as p_better.
AnalyticResult p_better_fsic(const SystemConfig& config);
/// P(FSIC-PA rate < HSIC-NPA rate | served user type II) = 1 - p_better.
AnalyticResult p_worse_fsic(const SystemConfig& config);

/// The four disjoint pieces of the HSIC-PA outage event, each in closed form.
struct HsicPaRegions {
  double stage_two_short;  // type II served at stage two, rate log2(1 + tau) too low
  double stage_one_short;  // type II served at stage one, rate too low
  double all_type_one;     // every user type I, best rate too low
  double primary_weak;     // tau(g) = 0
};
HsicPaRegions hsic_pa_region_terms(const SystemConfig& config);

/// The three disjoint pieces of the FSIC-PA outage event.
struct FsicPaRegions {
  double all_type_one;
  double primary_weak;
  double type_two;
};
FsicPaRegions fsic_pa_region_terms(const SystemConfig& config);

/// Least-squares slope of log10(outage) against SNR in dB. A diversity order d
/// shows up as a slope of -d / 10.
double log_outage_slope(std::span<const double> snr_db, std::span<const double> outage);

}  // namespace crnoma
