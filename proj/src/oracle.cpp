// SPDX-License-Identifier: Apache-2.0

#include "crnoma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "crnoma/error.hpp"

namespace crnoma::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gain thresholds that decide every secondary user's fate for a fixed g2.
struct Thresholds {
  double tau;          // tau(g2)
  double type_one;     // tau / Ps: users below are type I
  double first_stage;  // alpha_s (P0 g2 + 1): stage-one decoding meets Rs above this
  double crossover;    // tau (P0 g2 + 1) / Ps: stage two beats stage one below this
  bool stage_two_ok;   // log2(1 + tau) >= Rs
};

Thresholds thresholds(double g2, const SystemConfig& c) {
  const double t = tau(g2, c);
  const double load = c.p0() * g2 + 1.0;
  return {t, t / c.ps(), c.alpha_s() * load, t * load / c.ps(), t >= c.eps_s()};
}

// P(Exp(1) < x) for one user.
double single_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

// P(lo < Exp(1) < hi) for one user.
double single_mass(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  lo = std::max(lo, 0.0);
  if (hi == kInf) return std::exp(-lo);
  return std::exp(-lo) * -std::expm1(-(hi - lo));
}

// CDF of the largest of M i.i.d. unit exponentials.
double max_cdf(double x, int m) {
  if (x == kInf) return 1.0;
  return std::pow(single_cdf(x), m);
}

// 1 - max_cdf(x, m), without cancellation when max_cdf is small.
double max_ccdf(double x, int m) {
  if (x <= 0.0) return 1.0;
  if (x == kInf) return 0.0;
  return -std::expm1(m * std::log1p(-std::exp(-x)));
}

double probability_mass(double lo, double hi, int m) {
  return hi > lo ? std::max(0.0, max_cdf(hi, m) - max_cdf(lo, m)) : 0.0;
}

// Points where a conditional probability has a kink or jump in g2.
std::vector<double> breakpoints(const SystemConfig& c) {
  std::vector<double> points{c.alpha0(), c.alpha1()};
  const double product = c.eps0() * c.eps_s();
  if (product < 1.0) points.push_back(c.alpha1() / (1.0 - product));
  // At high SNR the integrands change on scales far below 1 that the tail map
  // squeezes against t = 1; a geometric ladder keeps them resolved.
  for (double x = std::min(c.alpha0(), 1.0 / std::max(c.p0(), c.ps())); x < 1.0; x *= 4.0) {
    points.push_back(x);
  }
  points.push_back(1.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::erase_if(points, [](double x) { return !(x > 0.0) || !std::isfinite(x); });
  return points;
}

// Integral over g2 in [0, inf) of f(g2) e^{-g2}.
QuadratureResult integrate_over_primary(const std::function<double(double)>& f,
                                        const SystemConfig& c, double abs_tol) {
  const auto points = breakpoints(c);
  const double share = abs_tol / static_cast<double>(points.size() + 1);
  auto weighted = [&](double g2) { return f(g2) * std::exp(-g2); };
  QuadratureResult total;
  double lo = 0.0;
  for (double hi : points) {
    const QuadratureResult r = integrate_adaptive(weighted, lo, hi, share);
    total.value += r.value;
    total.abs_error += r.abs_error;
    total.panels += r.panels;
    lo = hi;
  }
  const QuadratureResult tail = integrate_exponential_tail(f, lo, share);
  total.value += tail.value;
  total.abs_error += tail.abs_error;
  total.panels += tail.panels;
  return total;
}

}  // namespace

double conditional_outage_given_g(Scheme scheme, double g2, const SystemConfig& config) {
  if (!(g2 >= 0.0)) throw DomainError("conditional_outage_given_g: g2 must be non-negative");
  const Thresholds t = thresholds(g2, config);
  // Type I users (gain <= tau/Ps) reach log2(1 + Ps h) and miss Rs below alpha_s.
  const double type_one_miss = single_cdf(std::min(t.type_one, config.alpha_s()));
  // Type II users miss Rs for gains in (tau/Ps, upper).
  double upper = t.type_one;
  switch (scheme) {
    case Scheme::HsicPa:
      // max(stage one, stage two) < Rs needs both to miss.
      if (!t.stage_two_ok) upper = t.first_stage;
      break;
    case Scheme::FsicPa:
      if (!t.stage_two_ok) upper = kInf;
      break;
    case Scheme::HsicNpa:
      upper = t.first_stage;
      break;
  }
  const double single = type_one_miss + single_mass(t.type_one, upper);
  return std::pow(std::min(single, 1.0), config.m());
}

QuadratureResult outage_numeric(Scheme scheme, const SystemConfig& config, double abs_tol) {
  return integrate_over_primary(
      [&](double g2) { return conditional_outage_given_g(scheme, g2, config); }, config, abs_tol);
}

std::vector<RegionTerm> decomposition_terms(Scheme scheme, const SystemConfig& config,
                                            double abs_tol) {
  const int m = config.m();
  using Integrand = std::function<double(double)>;
  std::vector<std::pair<std::string, Integrand>> regions;
  // Served user is U_M: every region is an event on h_M and g2.
  const Integrand all_type_one = [&](double g2) {
    if (tau(g2, config) == 0.0) return 0.0;
    return max_cdf(std::min(thresholds(g2, config).type_one, config.alpha_s()), m);
  };
  switch (scheme) {
    case Scheme::HsicPa:
      regions.emplace_back("stage_two_short", [&](double g2) {
        const Thresholds t = thresholds(g2, config);
        if (t.tau == 0.0 || t.stage_two_ok) return 0.0;
        return probability_mass(t.type_one, t.crossover, m);
      });
      regions.emplace_back("stage_one_short", [&](double g2) {
        const Thresholds t = thresholds(g2, config);
        if (t.tau == 0.0) return 0.0;
        return probability_mass(std::max(t.type_one, t.crossover), t.first_stage, m);
      });
      regions.emplace_back("all_type_one", all_type_one);
      regions.emplace_back("primary_weak", [&](double g2) {
        const Thresholds t = thresholds(g2, config);
        return t.tau == 0.0 ? max_cdf(t.first_stage, m) : 0.0;
      });
      break;
    case Scheme::FsicPa:
      regions.emplace_back("all_type_one", all_type_one);
      regions.emplace_back("primary_weak", [&](double g2) {
        // tau = 0 leaves every user at rate 0.
        return tau(g2, config) == 0.0 && config.eps_s() > 0.0 ? 1.0 : 0.0;
      });
      regions.emplace_back("type_two", [&](double g2) {
        const Thresholds t = thresholds(g2, config);
        if (t.tau == 0.0 || t.stage_two_ok) return 0.0;
        return max_ccdf(t.type_one, m);
      });
      break;
    case Scheme::HsicNpa:
      throw DomainError("decomposition_terms: no region split is defined for HSIC-NPA");
  }
  std::vector<RegionTerm> terms;
  const double share = abs_tol / static_cast<double>(regions.size());
  for (const auto& [name, f] : regions) {
    const QuadratureResult r = integrate_over_primary(f, config, share);
    terms.push_back({name, r.value, r.abs_error});
  }
  return terms;
}

BetterNumeric p_better_numeric(const SystemConfig& config, double abs_tol) {
  const int m = config.m();
  const QuadratureResult numerator = integrate_over_primary(
      [&](double g2) {
        const Thresholds t = thresholds(g2, config);
        if (t.tau == 0.0) return 0.0;
        return probability_mass(t.type_one, t.crossover, m);
      },
      config, 0.5 * abs_tol);
  const QuadratureResult denominator = integrate_over_primary(
      [&](double g2) {
        const Thresholds t = thresholds(g2, config);
        return t.tau == 0.0 ? 1.0 : max_ccdf(t.type_one, m);
      },
      config, 0.5 * abs_tol);
  if (!(denominator.value >= 1e-300)) {
    throw DegenerateError("p_better_numeric: probability of a type-II served user below 1e-300");
  }
  return {numerator.value, denominator.value, numerator.value / denominator.value};
}

}  // namespace crnoma::oracle
