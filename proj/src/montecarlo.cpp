// SPDX-License-Identifier: Apache-2.0

#include "crnoma/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "crnoma/error.hpp"
#include "crnoma/random.hpp"

namespace crnoma {

namespace {

// Substream tags; one per metric so that no two metrics reuse draws.
enum class MetricTag : std::uint64_t {
  Outage = 1,
  ErgodicRate = 2,
  AvgBeta = 3,
  PType2 = 4,
  BetterWorse = 5,
  Joint = 6,
};

// Running count, mean and sum of squared deviations (Welford / Chan et al.).
struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) noexcept {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) noexcept {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(n + other.n);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.n) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
    n += other.n;
  }
};

McEstimate to_estimate(const Moments& m, std::uint64_t seed, std::string metric) {
  McEstimate e;
  e.mean = m.mean;
  e.n = m.n;
  e.seed = seed;
  e.metric = std::move(metric);
  if (m.n > 1) {
    const double variance = std::max(0.0, m.m2 / static_cast<double>(m.n - 1));
    e.std_error = std::sqrt(variance / static_cast<double>(m.n));
  }
  return e;
}

void require_trials(std::uint64_t n) {
  if (n < 1) throw TrialCountError("Monte Carlo needs at least one trial");
}

// Runs `kernel(draw, accumulators)` on n fresh draws and returns the merged
// accumulators. Deterministic in (seed, tag, n, chunks).
template <std::size_t K, class Kernel>
std::array<Moments, K> run_trials(const SystemConfig& config, std::uint64_t n, std::uint64_t seed,
                                  MetricTag tag, const McOptions& options, Kernel kernel) {
  require_trials(n);
  const auto chunks = static_cast<std::uint64_t>(std::max(1, options.chunks));
  std::vector<std::array<Moments, K>> partial(chunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    const std::uint64_t trials = n / chunks + (chunk < n % chunks ? 1 : 0);
    Philox4x32 rng(seed, (static_cast<std::uint64_t>(tag) << 32) | chunk);
    ChannelDraw draw;
    draw.h2.reserve(static_cast<std::size_t>(config.m()));
    auto& acc = partial[chunk];
    for (std::uint64_t t = 0; t < trials; ++t) {
      sample_channel_into(config, rng, draw);
      kernel(draw, acc);
    }
  };

  unsigned workers = options.workers > 0 ? static_cast<unsigned>(options.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }

  std::array<Moments, K> merged{};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < K; ++k) merged[k].merge(p[k]);
  }
  return merged;
}

}  // namespace

McEstimate estimate_outage(Scheme scheme, const SystemConfig& config, std::uint64_t n,
                           std::uint64_t seed, const McOptions& options) {
  const auto acc = run_trials<1>(config, n, seed, MetricTag::Outage, options,
                                 [&](const ChannelDraw& d, std::array<Moments, 1>& a) {
                                   const ServedOutcome o = evaluate_scheme(scheme, d, config);
                                   a[0].push(o.rate < config.rs() ? 1.0 : 0.0);
                                 });
  return to_estimate(acc[0], seed, "outage");
}

McEstimate estimate_ergodic_rate(Scheme scheme, const SystemConfig& config, std::uint64_t n,
                                 std::uint64_t seed, const McOptions& options) {
  const auto acc = run_trials<1>(config, n, seed, MetricTag::ErgodicRate, options,
                                 [&](const ChannelDraw& d, std::array<Moments, 1>& a) {
                                   a[0].push(evaluate_scheme(scheme, d, config).rate);
                                 });
  return to_estimate(acc[0], seed, "ergodic_rate");
}

McEstimate estimate_avg_beta(Scheme scheme, const SystemConfig& config, std::uint64_t n,
                             std::uint64_t seed, bool type2_only, const McOptions& options) {
  require_trials(n);
  if (scheme == Scheme::HsicNpa) {
    // Full power by definition.
    McEstimate e;
    e.mean = 1.0;
    e.n = n;
    e.seed = seed;
    e.metric = "avg_beta";
    return e;
  }
  const auto acc = run_trials<1>(config, n, seed, MetricTag::AvgBeta, options,
                                 [&](const ChannelDraw& d, std::array<Moments, 1>& a) {
                                   const ServedOutcome o = evaluate_scheme(scheme, d, config);
                                   if (!type2_only || o.user_type == UserType::II) a[0].push(o.beta);
                                 });
  if (acc[0].n == 0) throw DegenerateError("estimate_avg_beta: no type-II trials observed");
  return to_estimate(acc[0], seed, "avg_beta");
}

McEstimate estimate_p_type2(const SystemConfig& config, std::uint64_t n, std::uint64_t seed,
                            const McOptions& options) {
  const auto acc =
      run_trials<1>(config, n, seed, MetricTag::PType2, options,
                    [&](const ChannelDraw& d, std::array<Moments, 1>& a) {
                      const ServedOutcome o = evaluate_scheme(Scheme::HsicPa, d, config);
                      a[0].push(o.user_type == UserType::II ? 1.0 : 0.0);
                    });
  return to_estimate(acc[0], seed, "p_type2");
}

BetterWorse estimate_better_worse(const SystemConfig& config, std::uint64_t n, std::uint64_t seed,
                                  const McOptions& options) {
  const auto acc = run_trials<3>(
      config, n, seed, MetricTag::BetterWorse, options,
      [&](const ChannelDraw& d, std::array<Moments, 3>& a) {
        const double tau_g = tau(d.g2, config);
        const double h = d.h2.back();
        if (config.ps() * h <= tau_g) return;  // type I: all schemes agree
        // Rates are compared through SINR; log2(1 + x) is increasing.
        const double hsic = assess_user(Scheme::HsicPa, d.g2, tau_g, h, config).sinr;
        const double fsic = assess_user(Scheme::FsicPa, d.g2, tau_g, h, config).sinr;
        const double npa = assess_user(Scheme::HsicNpa, d.g2, tau_g, h, config).sinr;
        a[0].push(hsic > npa ? 1.0 : 0.0);
        a[1].push(fsic < npa ? 1.0 : 0.0);
        a[2].push(fsic > npa ? 1.0 : 0.0);
      });
  if (acc[0].n == 0) throw DegenerateError("estimate_better_worse: no type-II trials observed");
  return {to_estimate(acc[0], seed, "p_better"), to_estimate(acc[1], seed, "p_worse"),
          to_estimate(acc[2], seed, "p_better_fsic")};
}

ProbabilityEstimates estimate_probabilities(const SystemConfig& config, std::uint64_t n,
                                            std::uint64_t seed, const McOptions& options) {
  const auto acc = run_trials<7>(
      config, n, seed, MetricTag::Joint, options,
      [&](const ChannelDraw& d, std::array<Moments, 7>& a) {
        const ServedOutcome hsic = evaluate_scheme(Scheme::HsicPa, d, config);
        a[0].push(hsic.rate < config.rs() ? 1.0 : 0.0);
        a[1].push(evaluate_scheme(Scheme::FsicPa, d, config).rate < config.rs() ? 1.0 : 0.0);
        a[2].push(evaluate_scheme(Scheme::HsicNpa, d, config).rate < config.rs() ? 1.0 : 0.0);
        a[3].push(hsic.user_type == UserType::II ? 1.0 : 0.0);
        const double tau_g = tau(d.g2, config);
        const double h = d.h2.back();
        if (config.ps() * h <= tau_g) return;
        const double hsic_sinr = assess_user(Scheme::HsicPa, d.g2, tau_g, h, config).sinr;
        const double fsic_sinr = assess_user(Scheme::FsicPa, d.g2, tau_g, h, config).sinr;
        const double npa_sinr = assess_user(Scheme::HsicNpa, d.g2, tau_g, h, config).sinr;
        a[4].push(hsic_sinr > npa_sinr ? 1.0 : 0.0);
        a[5].push(fsic_sinr < npa_sinr ? 1.0 : 0.0);
        a[6].push(fsic_sinr > npa_sinr ? 1.0 : 0.0);
      });
  if (acc[4].n == 0) throw DegenerateError("estimate_probabilities: no type-II trials observed");
  return {to_estimate(acc[0], seed, "outage"),
          to_estimate(acc[1], seed, "outage"),
          to_estimate(acc[2], seed, "outage"),
          to_estimate(acc[3], seed, "p_type2"),
          {to_estimate(acc[4], seed, "p_better"), to_estimate(acc[5], seed, "p_worse"),
           to_estimate(acc[6], seed, "p_better_fsic")}};
}

double z_score(const McEstimate& estimate, double reference, bool probability) {
  double sigma = estimate.std_error;
  if (probability && estimate.n > 0) {
    const double p = std::clamp(reference, 0.0, 1.0);
    sigma = std::max(sigma, std::sqrt(p * (1.0 - p) / static_cast<double>(estimate.n)));
  }
  const double diff = std::abs(estimate.mean - reference);
  if (diff == 0.0) return 0.0;
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  return diff / sigma;
}

}  // namespace crnoma
