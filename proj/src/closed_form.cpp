// SPDX-License-Identifier: Apache-2.0

#include "crnoma/closed_form.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "crnoma/error.hpp"
#include "crnoma/special.hpp"

#if defined(CRNOMA_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace crnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundarySlack = 1e-9;

// Neumaier-compensated accumulator.
template <class Real>
class BasicCompensatedSum {
 public:
  void add(Real x) noexcept {
    const Real t = sum_ + x;
    if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const noexcept { return sum_ + carry_; }

 private:
  Real sum_ = 0;
  Real carry_ = 0;
};

using CompensatedSum = BasicCompensatedSum<long double>;

// The outage sum cancels from O(alpha1) terms down to O(alpha_s^M alpha1), so
// at high SNR and M >= 4 it needs more than the 64-bit long double mantissa.
#if defined(CRNOMA_HAVE_QUADMATH)
using Wide = __float128;
Wide wide_exp(Wide x) noexcept { return expq(x); }
Wide wide_expm1(Wide x) noexcept { return expm1q(x); }
Wide wide_erfc(Wide x) noexcept { return erfcq(x); }
Wide wide_sqrt(Wide x) noexcept { return sqrtq(x); }
constexpr Wide kWideEps = 1e-34;
#else
using Wide = long double;
Wide wide_exp(Wide x) noexcept { return std::exp(x); }
Wide wide_expm1(Wide x) noexcept { return std::expm1(x); }
Wide wide_erfc(Wide x) noexcept { return std::erfc(x); }
Wide wide_sqrt(Wide x) noexcept { return std::sqrt(x); }
constexpr Wide kWideEps = 1e-19L;
#endif

constexpr Wide kSqrtPi = 1.772453850905516027298167483341145182798L;

// e^{x^2} erfc(x). erfc stays representable up to x = 50 in both Wide types.
Wide wide_erfcx(Wide x) noexcept {
  if (x < 0) return 2 * wide_exp(x * x) - wide_erfcx(-x);
  if (x < 50) return wide_exp(x * x) * wide_erfc(x);
  const Wide step = 1 / (2 * x * x);
  Wide term = 1;
  Wide sum = 1;
  for (int k = 1; k < 60; ++k) {
    term *= -(2 * k - 1) * step;
    sum += term;
    if ((term < 0 ? -term : term) < kWideEps * sum) break;
  }
  return sum / (x * kSqrtPi);
}

// e^s times the integral of exp(-(A x^2 + B x)) over [a, b], b possibly
// infinite. Mirrors v_fn_scaled; A x^2 below Wide precision is dropped.
Wide wide_v(Wide a, double upper, Wide A, Wide B, Wide s) {
  const bool finite_upper = upper != kInf;
  const Wide b = upper;
  const Wide far = finite_upper ? b : (B > 0 ? a + 90 / B : Wide(kInf));
  if (A * far * far <= kWideEps) {
    if (!finite_upper) return wide_exp(s - a * B) / B;
    if (B == 0) return wide_exp(s) * (b - a);
    return wide_exp(s - a * B) * (-wide_expm1(-(b - a) * B)) / B;
  }
  const Wide root_a = wide_sqrt(A);
  const Wide k = kSqrtPi / (2 * root_a);
  const Wide offset = B / (2 * root_a);
  const Wide w_lo = root_a * a + offset;
  const Wide e_lo = wide_exp(s - a * (A * a + B));
  const Wide w_hi = finite_upper ? root_a * b + offset : 0;
  const Wide e_hi = finite_upper ? wide_exp(s - b * (A * b + B)) : 0;
  const Wide tail_hi = finite_upper ? wide_erfcx(w_hi) * e_hi : 0;
  if (w_lo >= 0) return k * (wide_erfcx(w_lo) * e_lo - tail_hi);
  if (finite_upper && w_hi <= 0) return k * (wide_erfcx(-w_hi) * e_hi - wide_erfcx(-w_lo) * e_lo);
  const Wide peak = wide_exp(s + B * B / (4 * A));
  return k * (2 * peak - tail_hi - wide_erfcx(-w_lo) * e_lo);
}

// C(m, i) for i = 0..m.
std::vector<long double> binomial_row(int m) {
  std::vector<long double> row(static_cast<std::size_t>(m) + 1);
  row[0] = 1.0L;
  for (int i = 1; i <= m; ++i) row[i] = row[i - 1] * (m - i + 1) / i;
  return row;
}

long double sign(int i) noexcept { return (i % 2 == 0) ? 1.0L : -1.0L; }

void require_cap(const SystemConfig& config, const char* what) {
  if (config.m() > kMaxClosedFormUsers) {
    throw ValidityError(std::string(what) + ": M = " + std::to_string(config.m()) +
                        " exceeds the alternating-sum cap of " +
                        std::to_string(kMaxClosedFormUsers) + "; use the quadrature oracle");
  }
}

AnalyticResult exact(long double raw, const char* source) {
  double value = static_cast<double>(raw);
  if (!std::isfinite(value)) throw ValidityError(std::string(source) + ": non-finite result");
  if (value < 0.0 && value >= -kBoundarySlack) value = 0.0;
  if (value > 1.0 && value <= 1.0 + kBoundarySlack) value = 1.0;
  if (value < 0.0 || value > 1.0) {
    throw ValidityError(std::string(source) + ": result " + std::to_string(value) +
                        " outside [0, 1]; precision lost in the alternating sum");
  }
  return {value, ResultKind::Exact, source};
}

AnalyticResult approx(double value, const char* source) {
  if (!std::isfinite(value)) throw ValidityError(std::string(source) + ": non-finite result");
  return {value, ResultKind::Approx, source};
}

// Arguments shared by every sum over the order-statistic expansion:
// e^{i/Ps} times integrals of exp(-(A_i x^2 + B_i x)) or exp(-(c_i + 1) x).
struct ExpansionArgs {
  double log_scale;  // i / Ps
  double quad;       // A_i = i P0 / (Ps alpha0)
  double lin;        // B_i = (i / Ps)(1 / alpha0 - P0) + 1
  double slope;      // c_i = i / (Ps alpha0)
};

ExpansionArgs expansion_args(const SystemConfig& c, int i) noexcept {
  const double ratio = i / c.ps();
  return {ratio, ratio * c.p0() / c.alpha0(), ratio * (1.0 / c.alpha0() - c.p0()) + 1.0,
          ratio / c.alpha0()};
}

// (1 - e^{-alpha_s})^M e^{-alpha1}: every user below the rate target while tau
// is already large enough.
long double saturated_tail(const SystemConfig& c) {
  return std::pow(static_cast<long double>(one_minus_exp_neg(c.alpha_s())), c.m()) *
         std::exp(-static_cast<long double>(c.alpha1()));
}

// sum_i C(M,i)(-1)^i e^{-i alpha_s} (1 - e^{-(alpha_s P0 i + 1) upper}) / (alpha_s P0 i + 1)
Wide weak_primary_sum(const SystemConfig& c, double upper) {
  BasicCompensatedSum<Wide> sum;
  const Wide alpha_s = c.alpha_s();
  const Wide p0 = c.p0();
  Wide binom = 1;
  for (int i = 0; i <= c.m(); ++i) {
    if (i > 0) binom = binom * (c.m() - i + 1) / i;
    const Wide k = alpha_s * p0 * i + 1;
    const Wide term = binom * wide_exp(-alpha_s * i) * (-wide_expm1(-k * upper)) / k;
    sum.add(i % 2 == 0 ? term : -term);
  }
  return sum.value();
}

// sum_i C(M,i)(-1)^i e^{i/Ps} u(alpha0, upper, c_i)
// Terms are formed in Wide from the double parameters: at large M the sum
// cancels by many orders of magnitude.
Wide threshold_sum(const SystemConfig& c, double upper) {
  if (upper < c.alpha0()) throw DomainError("threshold_sum: upper limit below alpha0");
  BasicCompensatedSum<Wide> sum;
  const Wide a = c.alpha0();
  const Wide ps = c.ps();
  const bool infinite = upper == kInf;
  const Wide width = infinite ? Wide(0) : static_cast<Wide>(upper) - a;
  Wide binom = 1;
  for (int i = 0; i <= c.m(); ++i) {
    if (i > 0) binom = binom * (c.m() - i + 1) / i;
    const Wide ratio = i / ps;
    const Wide k = ratio / a + 1;  // c_i + 1
    Wide u = wide_exp(ratio - a * k) / k;
    if (!infinite) u *= -wide_expm1(-width * k);
    sum.add(i % 2 == 0 ? binom * u : -binom * u);
  }
  return sum.value();
}

// sum_i C(M,i)(-1)^i e^{i/Ps} [v(upper, alpha0, A_i, B_i) - u(alpha0, upper, c_i)]
Wide adaptation_gain_sum(const SystemConfig& c, double upper) {
  BasicCompensatedSum<Wide> sum;
  const Wide a = c.alpha0();
  const Wide ps = c.ps();
  const Wide p0 = c.p0();
  const bool infinite = upper == kInf;
  const Wide width = infinite ? Wide(0) : static_cast<Wide>(upper) - a;
  Wide binom = 1;
  for (int i = 1; i <= c.m(); ++i) {
    binom = binom * (c.m() - i + 1) / i;
    const Wide ratio = i / ps;
    const Wide k = ratio / a + 1;
    Wide u = wide_exp(ratio - a * k) / k;
    if (!infinite) u *= -wide_expm1(-width * k);
    const Wide v = wide_v(a, upper, ratio * p0 / a, ratio * (1 / a - p0) + 1, ratio);
    const Wide term = binom * (v - u);
    sum.add(i % 2 == 0 ? term : -term);
  }
  return sum.value();
}

}  // namespace

AnalyticResult outage_hsic_pa_exact(const SystemConfig& config) {
  require_cap(config, "outage_hsic_pa_exact");
  const Wide total = weak_primary_sum(config, config.alpha1()) + static_cast<Wide>(saturated_tail(config));
  return exact(static_cast<long double>(total), "hsic-pa-exact");
}

HighSnrExpansion hsic_pa_high_snr_expansion(const SystemConfig& config) {
  const auto binom = binomial_row(config.m());
  const long double growth = static_cast<long double>(config.eps0()) * (1.0L + config.eps_s());
  const long double leading = std::pow(static_cast<long double>(config.alpha_s()), config.m());
  CompensatedSum first;
  CompensatedSum second;
  for (int i = 0; i <= config.m(); ++i) {
    if (i >= 1) first.add(binom[i] * std::pow(growth, i + 1) / (i + 1));
    second.add(binom[i] * std::pow(growth, i + 2) / (i + 2));
  }
  const long double p0 = config.p0();
  return {static_cast<double>(leading / p0 * first.value()),
          static_cast<double>(leading / (p0 * p0) * second.value()),
          static_cast<double>(leading)};
}

AnalyticResult outage_hsic_pa_approx1(const SystemConfig& config) {
  const HighSnrExpansion e = hsic_pa_high_snr_expansion(config);
  return approx(e.first_order - e.second_order + e.leading, "hsic-pa-approx1");
}

AnalyticResult outage_hsic_pa_approx2(const SystemConfig& config) {
  return approx(std::pow(config.alpha_s(), config.m()), "hsic-pa-approx2");
}

AnalyticResult outage_fsic_pa_exact(const SystemConfig& config) {
  const long double raw =
      static_cast<long double>(one_minus_exp_neg(config.alpha1())) + saturated_tail(config);
  return exact(raw, "fsic-pa-exact");
}

AnalyticResult outage_fsic_pa_approx(const SystemConfig& config) {
  const double weak = config.eps0() * (1.0 + config.eps_s()) / config.p0();
  const double leading = std::pow(config.eps_s() / config.ps(), config.m());
  return approx(weak + leading - leading * weak, "fsic-pa-approx");
}

AnalyticResult p_type2(const SystemConfig& config) {
  require_cap(config, "p_type2");
  return exact(static_cast<long double>(1 - threshold_sum(config, kInf)), "p-type2");
}

BetterProbabilityParts better_probability_parts(const SystemConfig& config) {
  require_cap(config, "p_better");
  return {static_cast<double>(adaptation_gain_sum(config, kInf)),
          static_cast<double>(1 - threshold_sum(config, kInf))};
}

AnalyticResult p_better(const SystemConfig& config) {
  const BetterProbabilityParts parts = better_probability_parts(config);
  if (!(parts.denominator >= 1e-300)) {
    throw DegenerateError("p_better: probability of a type-II served user underflows to 0");
  }
  return exact(static_cast<long double>(parts.numerator) / parts.denominator, "p-better");
}

AnalyticResult p_better_fsic(const SystemConfig& config) {
  AnalyticResult r = p_better(config);
  r.source = "p-better-fsic";
  return r;
}

AnalyticResult p_worse_fsic(const SystemConfig& config) {
  const AnalyticResult better = p_better(config);
  return exact(1.0L - better.value, "p-worse-fsic");
}

HsicPaRegions hsic_pa_region_terms(const SystemConfig& config) {
  require_cap(config, "hsic_pa_region_terms");
  const auto binom = binomial_row(config.m());
  const double a0 = config.alpha0();
  const double a1 = config.alpha1();
  CompensatedSum stage_two;
  CompensatedSum stage_one;
  for (int i = 0; i <= config.m(); ++i) {
    const ExpansionArgs e = expansion_args(config, i);
    const long double w = sign(i) * binom[i];
    const long double v = v_fn_scaled(a1, a0, e.quad, e.lin, e.log_scale);
    const long double u = u_fn_scaled(a0, a1, e.slope, e.log_scale);
    const long double full = u_fn_scaled(a0, a1, i * config.alpha_s() * config.p0(),
                                         -i * config.alpha_s());
    stage_two.add(w * (v - u));
    stage_one.add(w * (full - v));
  }
  return {static_cast<double>(stage_two.value()), static_cast<double>(stage_one.value()),
          static_cast<double>(threshold_sum(config, a1) + static_cast<Wide>(saturated_tail(config))),
          static_cast<double>(weak_primary_sum(config, a0))};
}

FsicPaRegions fsic_pa_region_terms(const SystemConfig& config) {
  require_cap(config, "fsic_pa_region_terms");
  const double a0 = config.alpha0();
  const double a1 = config.alpha1();
  const long double thresholds = static_cast<long double>(threshold_sum(config, a1));
  const long double between = std::exp(-static_cast<long double>(a0)) -
                              std::exp(-static_cast<long double>(a1));
  return {static_cast<double>(thresholds + saturated_tail(config)), one_minus_exp_neg(a0),
          static_cast<double>(between - thresholds)};
}

double log_outage_slope(std::span<const double> snr_db, std::span<const double> outage) {
  if (snr_db.size() != outage.size() || snr_db.size() < 2) {
    throw DomainError("log_outage_slope: need at least two paired points");
  }
  const double n = static_cast<double>(snr_db.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < snr_db.size(); ++k) {
    if (!(outage[k] > 0.0)) throw DomainError("log_outage_slope: outage must be positive");
    mean_x += snr_db[k];
    mean_y += std::log10(outage[k]);
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < snr_db.size(); ++k) {
    const double dx = snr_db[k] - mean_x;
    sxy += dx * (std::log10(outage[k]) - mean_y);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw DomainError("log_outage_slope: SNR points must differ");
  return sxy / sxx;
}

}  // namespace crnoma
