// SPDX-License-Identifier: Apache-2.0

#include "crnoma/config.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "crnoma/error.hpp"

namespace crnoma {

namespace {

DerivedConstants compute(double p0, double ps, double r0, double rs) {
  DerivedConstants d{};
  d.eps0 = rate_to_sinr(r0);
  d.eps_s = rate_to_sinr(rs);
  d.alpha0 = d.eps0 / p0;
  d.alpha_s = d.eps_s / ps;
  d.alpha1 = (1.0 + d.eps_s) * d.alpha0;
  return d;
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

double rate_to_sinr(double rate) noexcept {
  // exp2 is exact at integer rates; expm1 avoids cancellation near zero.
  if (rate >= 0.5) return std::exp2(rate) - 1.0;
  return std::expm1(rate * std::numbers::ln2);
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

SystemConfig::SystemConfig(int m, double p0, double ps, double r0, double rs)
    : m_(m), p0_(p0), ps_(ps), r0_(r0), rs_(rs) {
  if (m < 1 || m > kMaxUsers) {
    throw ConfigError("M must lie in [1, " + std::to_string(kMaxUsers) + "], got " +
                      std::to_string(m));
  }
  if (!positive_finite(p0)) throw ConfigError("P0 must be positive and finite");
  if (!positive_finite(ps)) throw ConfigError("Ps must be positive and finite");
  if (!positive_finite(r0)) throw ConfigError("R0 must be positive and finite");
  if (!std::isfinite(rs) || rs < 0.0) throw ConfigError("Rs must be non-negative and finite");
  derived_ = compute(p0, ps, r0, rs);
}

SystemConfig SystemConfig::from_snr_db(int m, double snr_db, double rho, double r0, double rs) {
  if (!positive_finite(rho)) throw ConfigError("power ratio rho must be positive");
  const double p0 = db_to_linear(snr_db);
  return SystemConfig(m, p0, rho * p0, r0, rs);
}

DerivedConstants derive_constants(const SystemConfig& config) {
  return compute(config.p0(), config.ps(), config.r0(), config.rs());
}

}  // namespace crnoma
