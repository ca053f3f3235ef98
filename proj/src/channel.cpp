// SPDX-License-Identifier: Apache-2.0

#include "crnoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crnoma/error.hpp"

namespace crnoma {

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::HsicPa:
      return "HSIC-PA";
    case Scheme::FsicPa:
      return "FSIC-PA";
    case Scheme::HsicNpa:
      return "HSIC-NPA";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
  for (Scheme s : kAllSchemes) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

std::string_view to_string(SicStage stage) noexcept {
  return stage == SicStage::First ? "first" : "second";
}

std::string_view to_string(UserType type) noexcept { return type == UserType::I ? "I" : "II"; }

double sinr_to_rate(double sinr) noexcept { return std::log1p(sinr) / std::numbers::ln2; }

void sample_channel_into(const SystemConfig& config, Philox4x32& rng, ChannelDraw& draw) {
  draw.g2 = rng.exponential();
  draw.h2.resize(static_cast<std::size_t>(config.m()));
  for (double& h : draw.h2) h = rng.exponential();
  // Insertion sort; M is small.
  for (std::size_t i = 1; i < draw.h2.size(); ++i) {
    const double x = draw.h2[i];
    std::size_t j = i;
    for (; j > 0 && draw.h2[j - 1] > x; --j) draw.h2[j] = draw.h2[j - 1];
    draw.h2[j] = x;
  }
}

ChannelDraw sample_channel(const SystemConfig& config, Philox4x32& rng) {
  ChannelDraw draw;
  sample_channel_into(config, rng, draw);
  return draw;
}

double tau(double g2, const SystemConfig& config) noexcept {
  return std::max(0.0, config.p0() * g2 / config.eps0() - 1.0);
}

namespace {

// Power coefficient that lands the received power on tau without exceeding it
// after rounding.
double adapted_beta(double tau_g, double ps, double h2) noexcept {
  double beta = tau_g / (ps * h2);
  while (beta > 0.0 && beta * ps * h2 > tau_g) beta = std::nextafter(beta, 0.0);
  return beta;
}

UserDecision power_adapted(double tau_g, double ps, double h2) noexcept {
  const double beta = adapted_beta(tau_g, ps, h2);
  return {tau_g, beta, SicStage::Second, UserType::II, beta * ps * h2};
}

}  // namespace

UserDecision assess_user(Scheme scheme, double g2, double tau_g, double h2,
                         const SystemConfig& config) noexcept {
  const double received = config.ps() * h2;
  if (received <= tau_g) {
    return {received, 1.0, SicStage::Second, UserType::I, received};
  }
  const UserDecision full_power_first{received / (config.p0() * g2 + 1.0), 1.0, SicStage::First,
                                      UserType::II, received};
  switch (scheme) {
    case Scheme::HsicNpa:
      return full_power_first;
    case Scheme::FsicPa:
      return power_adapted(tau_g, config.ps(), h2);
    case Scheme::HsicPa:
      // Equal rates resolve to the stage-two option: same rate, less power.
      if (tau_g >= full_power_first.sinr) return power_adapted(tau_g, config.ps(), h2);
      return full_power_first;
  }
  return full_power_first;
}

ServedOutcome evaluate_scheme(Scheme scheme, const ChannelDraw& draw, const SystemConfig& config) {
  if (draw.h2.size() != static_cast<std::size_t>(config.m())) {
    throw DomainError("channel draw carries " + std::to_string(draw.h2.size()) +
                      " gains but M = " + std::to_string(config.m()));
  }
  const double tau_g = tau(draw.g2, config);
  int best_index = 0;
  UserDecision best{-1.0, 1.0, SicStage::Second, UserType::I, 0.0};
  for (std::size_t k = 0; k < draw.h2.size(); ++k) {
    const UserDecision d = assess_user(scheme, draw.g2, tau_g, draw.h2[k], config);
    if (d.sinr >= best.sinr) {
      best = d;
      best_index = static_cast<int>(k) + 1;
    }
  }
  return {scheme,    best_index, sinr_to_rate(best.sinr), best.beta,
          best.stage, best.type, best.primary_interference};
}

}  // namespace crnoma
