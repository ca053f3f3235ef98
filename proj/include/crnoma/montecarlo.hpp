// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "crnoma/channel.hpp"
#include "crnoma/config.hpp"

namespace crnoma {

/// Sample mean with its standard error (sample standard deviation / sqrt(n)).
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::string metric;
};

/// Trials are split into a fixed number of chunks, each drawing from its own
/// Philox substream keyed by (seed, metric, chunk index). Chunk results are
/// combined in index order, so outputs depend on (seed, n, chunks) only and
/// never on the worker count. Estimators sharing a metric share draws, which
/// gives common random numbers across schemes.
struct McOptions {
  int chunks = 256;
  int workers = 0;  // 0: one per hardware thread
};

/// Fraction of trials whose served rate falls strictly below Rs.
McEstimate estimate_outage(Scheme scheme, const SystemConfig& config, std::uint64_t n,
                           std::uint64_t seed, const McOptions& options = {});

/// Mean served rate in bits per channel use.
McEstimate estimate_ergodic_rate(Scheme scheme, const SystemConfig& config, std::uint64_t n,
                                 std::uint64_t seed, const McOptions& options = {});

/// Mean power-adaptation coefficient of the served user, over all trials or
/// over type-II trials only. HSIC-NPA never adapts power and returns exactly 1.
McEstimate estimate_avg_beta(Scheme scheme, const SystemConfig& config, std::uint64_t n,
                             std::uint64_t seed, bool type2_only = false,
                             const McOptions& options = {});

/// Fraction of trials in which the served user is type II.
McEstimate estimate_p_type2(const SystemConfig& config, std::uint64_t n, std::uint64_t seed,
                            const McOptions& options = {});

/// Conditional frequencies over trials where the served user U_M is type II,
/// comparing U_M's rate under each scheme on the same draw.
struct BetterWorse {
  McEstimate better;       // HSIC-PA rate > HSIC-NPA rate
  McEstimate worse;        // FSIC-PA rate < HSIC-NPA rate
  McEstimate better_fsic;  // FSIC-PA rate > HSIC-NPA rate
};
/// Throws DegenerateError when no trial has a type-II served user.
BetterWorse estimate_better_worse(const SystemConfig& config, std::uint64_t n, std::uint64_t seed,
                                  const McOptions& options = {});

/// Every probability above from one shared set of draws: each trial feeds all
/// of the estimates, so they are correlated with one another but each one is
/// an ordinary estimate over n trials.
struct ProbabilityEstimates {
  McEstimate outage_hsic_pa;
  McEstimate outage_fsic_pa;
  McEstimate outage_hsic_npa;
  McEstimate p_type2;
  BetterWorse better_worse;
};
/// Throws DegenerateError when no trial has a type-II served user.
ProbabilityEstimates estimate_probabilities(const SystemConfig& config, std::uint64_t n,
                                            std::uint64_t seed, const McOptions& options = {});

/// |estimate - reference| / sigma. For probability metrics sigma is floored at
/// the binomial standard error implied by the reference, so an estimate with
/// no observed events still yields a finite score.
double z_score(const McEstimate& estimate, double reference, bool probability = true);

}  // namespace crnoma
