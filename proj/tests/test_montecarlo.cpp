// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "crnoma/closed_form.hpp"
#include "crnoma/error.hpp"
#include "crnoma/montecarlo.hpp"
#include "crnoma/oracle.hpp"

using namespace crnoma;

namespace {

bool identical(const McEstimate& a, const McEstimate& b) {
  return a.mean == b.mean && a.std_error == b.std_error && a.n == b.n && a.seed == b.seed &&
         a.metric == b.metric;
}

SystemConfig symmetric(int m, double snr_db, double r0 = 1.0) {
  return SystemConfig::from_snr_db(m, snr_db, 1.0, r0, 1.0);
}

}  // namespace

TEST_CASE("outage estimates") {
  CHECK(estimate_outage(Scheme::HsicPa, SystemConfig(3, 10.0, 10.0, 1.0, 0.0), 10000, 1).mean == 0.0);

  const SystemConfig c(1, 10.0, 10.0, 1.0, 1.0);
  const McEstimate e = estimate_outage(Scheme::HsicPa, c, 10000000, 2);
  CHECK(e.n == 10000000);
  CHECK(e.std_error > 0.0);
  CHECK(std::abs(e.mean - 0.110029) <= 4 * e.std_error);
  CHECK(e.std_error == doctest::Approx(std::sqrt(e.mean * (1 - e.mean) / (e.n - 1))).epsilon(1e-6));

  CHECK(z_score(estimate_outage(Scheme::FsicPa, symmetric(4, 20.0), 10000000, 3),
                outage_fsic_pa_exact(symmetric(4, 20.0)).value) <= 4.0);
  CHECK(z_score(estimate_outage(Scheme::HsicPa, symmetric(4, 30.0), 10000000, 3),
                outage_hsic_pa_exact(symmetric(4, 30.0)).value) <= 4.0);

  CHECK_THROWS_AS(estimate_outage(Scheme::HsicPa, c, 0, 1), TrialCountError);
}

TEST_CASE("determinism") {
  const SystemConfig c = symmetric(4, 10.0);
  McOptions one, many;
  one.workers = 1;
  many.workers = 3;
  CHECK(identical(estimate_outage(Scheme::HsicNpa, c, 100001, 9, one), estimate_outage(Scheme::HsicNpa, c, 100001, 9, one)));
  CHECK(identical(estimate_outage(Scheme::HsicNpa, c, 100001, 9, one), estimate_outage(Scheme::HsicNpa, c, 100001, 9, many)));
  CHECK(identical(estimate_p_type2(c, 50000, 4, one), estimate_p_type2(c, 50000, 4, many)));
  CHECK_FALSE(identical(estimate_outage(Scheme::HsicNpa, c, 100001, 9), estimate_outage(Scheme::HsicNpa, c, 100001, 10)));
  // Fewer trials than chunks still works.
  CHECK(estimate_ergodic_rate(Scheme::HsicPa, c, 7, 1).n == 7);
}

TEST_CASE("ergodic rates") {
  const SystemConfig c = symmetric(4, 20.0);
  const double hsic = estimate_ergodic_rate(Scheme::HsicPa, c, 200000, 5).mean;
  CHECK(hsic >= estimate_ergodic_rate(Scheme::HsicNpa, c, 200000, 5).mean);
  CHECK(hsic >= estimate_ergodic_rate(Scheme::FsicPa, c, 200000, 5).mean);

  const SystemConfig high = symmetric(4, 50.0);
  const double hsic_high = estimate_ergodic_rate(Scheme::HsicPa, high, 200000, 6).mean;
  CHECK(std::abs(estimate_ergodic_rate(Scheme::FsicPa, high, 200000, 6).mean - hsic_high) / hsic_high < 0.02);

  const SystemConfig low = symmetric(4, 0.0, 2.0);
  const double hsic_low = estimate_ergodic_rate(Scheme::HsicPa, low, 200000, 7).mean;
  CHECK(std::abs(estimate_ergodic_rate(Scheme::HsicNpa, low, 200000, 7).mean - hsic_low) / hsic_low < 0.02);
  // The gap closes as SNR falls.
  const SystemConfig lower = symmetric(4, -10.0, 1.0);
  const double gap0 = 1 - estimate_ergodic_rate(Scheme::HsicNpa, symmetric(4, 0.0), 200000, 7).mean /
                              estimate_ergodic_rate(Scheme::HsicPa, symmetric(4, 0.0), 200000, 7).mean;
  const double gap_lower = 1 - estimate_ergodic_rate(Scheme::HsicNpa, lower, 200000, 7).mean /
                                   estimate_ergodic_rate(Scheme::HsicPa, lower, 200000, 7).mean;
  CHECK(gap_lower < gap0);
}

TEST_CASE("average power coefficient") {
  const SystemConfig low = symmetric(4, 0.0, 2.0);
  CHECK(estimate_avg_beta(Scheme::HsicPa, low, 200000, 1).mean > 0.95);
  CHECK(estimate_avg_beta(Scheme::FsicPa, low, 200000, 1).mean < 0.05);

  const McEstimate npa = estimate_avg_beta(Scheme::HsicNpa, low, 1000, 1);
  CHECK(npa.mean == 1.0);
  CHECK(npa.std_error == 0.0);

  for (Scheme s : {Scheme::HsicPa, Scheme::FsicPa}) {
    const double at50 = estimate_avg_beta(s, symmetric(4, 50.0), 200000, 2).mean;
    const double at60 = estimate_avg_beta(s, symmetric(4, 60.0), 200000, 2).mean;
    CHECK(std::abs(at50 - at60) < 0.01);
    const McEstimate t2 = estimate_avg_beta(s, symmetric(4, 50.0), 200000, 2, true);
    CHECK(t2.n < 200000);
    CHECK(t2.mean <= 1.0);
  }
  CHECK(estimate_avg_beta(Scheme::HsicPa, symmetric(4, 50.0), 200000, 2).mean >
        estimate_avg_beta(Scheme::FsicPa, symmetric(4, 50.0), 200000, 2).mean);
}

TEST_CASE("type-II frequency") {
  const SystemConfig c(4, 10.0, 10.0, 1.0, 1.0);
  const McEstimate e = estimate_p_type2(c, 10000000, 8);
  CHECK(std::abs(e.mean - p_type2(c).value) <= 4 * e.std_error);
  CHECK(estimate_p_type2(SystemConfig(4, 10.0, 10.0, 30.0, 1.0), 10000, 1).mean == 1.0);
}

TEST_CASE("better and worse frequencies") {
  const SystemConfig c(4, 10.0, 10.0, 1.0, 1.0);
  const BetterWorse bw = estimate_better_worse(c, 2000000, 9);
  CHECK(bw.better.mean == bw.better_fsic.mean);
  CHECK(bw.better.n == bw.worse.n);
  CHECK(std::abs(bw.better.mean - p_better(c).value) <= 4 * bw.better.std_error);
  CHECK(std::abs(bw.worse.mean - p_worse_fsic(c).value) <= 4 * bw.worse.std_error);
  CHECK(bw.better.mean + bw.worse.mean == doctest::Approx(1.0).epsilon(1e-12));

  const double worse_low = estimate_better_worse(symmetric(4, -10.0), 200000, 1).worse.mean;
  CHECK(worse_low > 0.99);
  CHECK(worse_low > estimate_better_worse(symmetric(4, 0.0), 200000, 1).worse.mean);

  // Ps negligible: a type-II served user never occurs.
  CHECK_THROWS_AS(estimate_better_worse(SystemConfig(2, 1e12, 1e-12, 0.5, 1.0), 1000, 1), DegenerateError);
}

TEST_CASE("all probabilities from shared draws") {
  const SystemConfig c(2, 100.0, 100.0, 1.0, 1.0);
  const ProbabilityEstimates e = estimate_probabilities(c, 2000000, 5);
  CHECK(e.outage_hsic_pa.n == 2000000);
  CHECK(z_score(e.outage_hsic_pa, outage_hsic_pa_exact(c).value) <= 4.0);
  CHECK(z_score(e.outage_fsic_pa, outage_fsic_pa_exact(c).value) <= 4.0);
  CHECK(z_score(e.outage_hsic_npa, oracle::outage_numeric(Scheme::HsicNpa, c).value) <= 4.0);
  CHECK(z_score(e.p_type2, p_type2(c).value) <= 4.0);
  CHECK(z_score(e.better_worse.better, p_better(c).value) <= 4.0);
  CHECK(e.better_worse.better.mean + e.better_worse.worse.mean == doctest::Approx(1.0).epsilon(1e-12));
  // Common draws: power adaptation never loses to full power.
  CHECK(e.outage_hsic_pa.mean <= e.outage_hsic_npa.mean);
  CHECK(e.outage_hsic_pa.mean <= e.outage_fsic_pa.mean);
  const ProbabilityEstimates again = estimate_probabilities(c, 2000000, 5, {256, 3});
  CHECK(again.better_worse.worse.mean == e.better_worse.worse.mean);
}

TEST_CASE("z-score") {
  McEstimate e;
  e.mean = 0.0;
  e.n = 1000;
  CHECK(z_score(e, 0.0) == 0.0);
  CHECK(z_score(e, 1e-6) < 1.0);  // binomial floor keeps an all-zero sample finite
  e.mean = 0.5;
  e.n = 1000000;
  e.std_error = 0.01;
  CHECK(z_score(e, 0.53) == doctest::Approx(3.0));
}
