// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "crnoma/channel.hpp"
#include "crnoma/closed_form.hpp"
#include "crnoma/error.hpp"
#include "crnoma/oracle.hpp"
#include "crnoma/random.hpp"
#include "support.hpp"

using namespace crnoma;

namespace {

double term(const std::vector<oracle::RegionTerm>& terms, const std::string& name) {
  for (const auto& t : terms) {
    if (t.name == name) return t.value;
  }
  FAIL("missing term ", name);
  return 0.0;
}

double total(const std::vector<oracle::RegionTerm>& terms) {
  return std::accumulate(terms.begin(), terms.end(), 0.0,
                         [](double s, const oracle::RegionTerm& t) { return s + t.value; });
}

}  // namespace

TEST_CASE("conditional outage given the primary gain") {
  const SystemConfig c(3, 10.0, 10.0, 1.0, 1.0);
  CHECK(oracle::conditional_outage_given_g(Scheme::FsicPa, 0.5 * c.alpha0(), c) == 1.0);
  // tau >= eps_s: stage two always meets the target, only all-type-I-short remains.
  const double g2 = 0.5;
  REQUIRE(tau(g2, c) >= c.eps_s());
  CHECK(oracle::conditional_outage_given_g(Scheme::HsicPa, g2, c) ==
        doctest::Approx(std::pow(1.0 - std::exp(-c.alpha_s()), 3)).epsilon(1e-14));

  SUBCASE("matches resampled secondary gains") {
    const SystemConfig one(1, 10.0, 10.0, 1.0, 1.0);
    Philox4x32 rng(31);
    const int n = 1000000;
    for (double g : {0.12, 0.15, 0.5}) {
      for (Scheme s : kAllSchemes) {
        int outages = 0;
        for (int k = 0; k < n; ++k) {
          const ChannelDraw d{g, {rng.exponential()}};
          if (evaluate_scheme(s, d, one).rate < one.rs()) ++outages;
        }
        const double p = oracle::conditional_outage_given_g(s, g, one);
        const double freq = static_cast<double>(outages) / n;
        const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
        INFO(to_string(s), " g2=", g, " oracle=", p, " freq=", freq);
        CHECK(std::abs(freq - p) <= 4 * se);
      }
    }
  }
}

TEST_CASE("integrated outage") {
  const SystemConfig c(1, 10.0, 10.0, 1.0, 1.0);
  CHECK(std::abs(oracle::outage_numeric(Scheme::HsicPa, c).value - 0.110029) <= 1e-6);
  CHECK(std::abs(oracle::outage_numeric(Scheme::FsicPa, c).value - 0.259182) <= 1e-6);
  CHECK(std::abs(oracle::outage_numeric(Scheme::HsicPa, c).value - outage_hsic_pa_exact(c).value) <= 1e-9);
  CHECK(std::abs(oracle::outage_numeric(Scheme::FsicPa, c).value - outage_fsic_pa_exact(c).value) <= 1e-9);
  CHECK(oracle::outage_numeric(Scheme::HsicPa, SystemConfig(2, 10.0, 10.0, 1.0, 1e-12)).value < 1e-10);
}

TEST_CASE("oracle agrees with closed forms on random configurations") {
  testing::InputStream in(2718);
  const double rates[] = {0.5, 1.0, 2.0, 4.0, 6.0};
  const int users[] = {1, 2, 4, 8};
  for (int k = 0; k < 250; ++k) {
    const double snr = in.uniform(0.0, 60.0);
    const double rho = in.pick(2) == 0 ? 0.1 : 1.0;
    const SystemConfig c = SystemConfig::from_snr_db(users[in.pick(4)], snr, rho, rates[in.pick(5)], rates[in.pick(5)]);
    INFO("M=", c.m(), " P0=", c.p0(), " Ps=", c.ps(), " R0=", c.r0(), " Rs=", c.rs());
    REQUIRE(std::abs(oracle::outage_numeric(Scheme::HsicPa, c).value - outage_hsic_pa_exact(c).value) <= 1e-8);
    REQUIRE(std::abs(oracle::outage_numeric(Scheme::FsicPa, c).value - outage_fsic_pa_exact(c).value) <= 1e-8);
    const oracle::BetterNumeric b = oracle::p_better_numeric(c);
    REQUIRE(b.numerator <= b.denominator);
    REQUIRE(b.ratio >= 0.0);
    REQUIRE(b.ratio <= 1.0);
    REQUIRE(std::abs(b.denominator - p_type2(c).value) <= 1e-8);
    REQUIRE(std::abs(b.ratio - p_better(c).value) <= 1e-8);
  }
}

TEST_CASE("closed form holds up to the user cap") {
  for (int m : {10, 16, 24, 30}) {
    for (double snr : {0.0, 10.0, 30.0}) {
      const SystemConfig c = SystemConfig::from_snr_db(m, snr, 1.0, 1.0, 2.0);
      INFO("M=", m, " snr=", snr);
      CHECK(std::abs(oracle::outage_numeric(Scheme::HsicPa, c).value - outage_hsic_pa_exact(c).value) <= 1e-9);
    }
  }
}

TEST_CASE("region decompositions") {
  testing::InputStream in(5);
  for (int k = 0; k < 40; ++k) {
    const SystemConfig c(1 + in.pick(6), std::pow(10.0, in.uniform(0.0, 4.0)), std::pow(10.0, in.uniform(0.0, 4.0)),
                         in.uniform(0.5, 4.0), in.uniform(0.5, 4.0));
    INFO("M=", c.m(), " P0=", c.p0(), " Ps=", c.ps(), " R0=", c.r0(), " Rs=", c.rs());

    const auto hsic = oracle::decomposition_terms(Scheme::HsicPa, c);
    CHECK(std::abs(total(hsic) - oracle::outage_numeric(Scheme::HsicPa, c).value) <= 1e-9);
    const HsicPaRegions hr = hsic_pa_region_terms(c);
    CHECK(std::abs(term(hsic, "stage_two_short") - hr.stage_two_short) <= 1e-9);
    CHECK(std::abs(term(hsic, "stage_one_short") - hr.stage_one_short) <= 1e-9);
    CHECK(std::abs(term(hsic, "all_type_one") - hr.all_type_one) <= 1e-9);
    CHECK(std::abs(term(hsic, "primary_weak") - hr.primary_weak) <= 1e-9);

    const auto fsic = oracle::decomposition_terms(Scheme::FsicPa, c);
    CHECK(std::abs(total(fsic) - oracle::outage_numeric(Scheme::FsicPa, c).value) <= 1e-9);
    const FsicPaRegions fr = fsic_pa_region_terms(c);
    CHECK(std::abs(term(fsic, "all_type_one") - fr.all_type_one) <= 1e-9);
    CHECK(std::abs(term(fsic, "primary_weak") - fr.primary_weak) <= 1e-9);
    CHECK(std::abs(term(fsic, "type_two") - fr.type_two) <= 1e-9);

    for (const auto& t : hsic) CHECK((t.value >= -1e-12 && t.value <= 1.0));
    for (const auto& t : fsic) CHECK((t.value >= -1e-12 && t.value <= 1.0));
  }
  // The stage-two window (alpha0, alpha1) closes as Rs -> 0.
  const auto narrow = oracle::decomposition_terms(Scheme::HsicPa, SystemConfig(2, 10.0, 10.0, 1.0, 1e-9));
  CHECK(term(narrow, "stage_two_short") < 1e-9);
  CHECK_THROWS_AS(oracle::decomposition_terms(Scheme::HsicNpa, SystemConfig(2, 10.0, 10.0, 1.0, 1.0)), DomainError);
}

TEST_CASE("better-rate probability by integration") {
  const SystemConfig c(4, 10.0, 10.0, 1.0, 1.0);
  const oracle::BetterNumeric b = oracle::p_better_numeric(c);
  CHECK(std::abs(b.ratio - p_better(c).value) <= 1e-8);
  CHECK(b.ratio == doctest::Approx(b.numerator / b.denominator));
}

TEST_CASE("error floor without power adaptation") {
  // eps0 * eps_s = 15 > 1: outage stalls.
  const double at50 = oracle::outage_numeric(Scheme::HsicNpa, SystemConfig::from_snr_db(4, 50.0, 1.0, 4.0, 1.0)).value;
  const double at60 = oracle::outage_numeric(Scheme::HsicNpa, SystemConfig::from_snr_db(4, 60.0, 1.0, 4.0, 1.0)).value;
  CHECK(std::abs(at50 - at60) / at50 < 0.1);
  // eps0 * eps_s = 1: no floor.
  const double low = oracle::outage_numeric(Scheme::HsicNpa, SystemConfig::from_snr_db(4, 60.0, 1.0, 1.0, 1.0)).value;
  CHECK(low < 1e-5);
}
