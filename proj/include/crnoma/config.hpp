// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace crnoma {

/// Largest supported number of secondary users.
inline constexpr int kMaxUsers = 64;

/// The five constants every expression in the toolkit is written in.
struct DerivedConstants {
  double eps0;     // 2^R0 - 1
  double eps_s;    // 2^Rs - 1
  double alpha0;   // eps0 / P0
  double alpha_s;  // eps_s / Ps
  double alpha1;   // (1 + eps_s) * alpha0
};

/// Static scenario: M secondary users sharing the primary's resource block.
/// Powers are linear and noise-normalized; rates are in bits per channel use.
class SystemConfig {
 public:
  /// Throws ConfigError unless 1 <= m <= kMaxUsers, p0 > 0, ps > 0, r0 > 0, rs >= 0.
  SystemConfig(int m, double p0, double ps, double r0, double rs);

  /// Builds a config from SNR in dB applied to P0, with Ps = rho * P0.
  static SystemConfig from_snr_db(int m, double snr_db, double rho, double r0, double rs);

  int m() const noexcept { return m_; }
  double p0() const noexcept { return p0_; }
  double ps() const noexcept { return ps_; }
  double r0() const noexcept { return r0_; }
  double rs() const noexcept { return rs_; }

  double eps0() const noexcept { return derived_.eps0; }
  double eps_s() const noexcept { return derived_.eps_s; }
  double alpha0() const noexcept { return derived_.alpha0; }
  double alpha_s() const noexcept { return derived_.alpha_s; }
  double alpha1() const noexcept { return derived_.alpha1; }
  const DerivedConstants& derived() const noexcept { return derived_; }

 private:
  int m_;
  double p0_;
  double ps_;
  double r0_;
  double rs_;
  DerivedConstants derived_;
};

DerivedConstants derive_constants(const SystemConfig& config);

/// 2^rate - 1 without cancellation at small rates.
double rate_to_sinr(double rate) noexcept;

double db_to_linear(double db) noexcept;

}  // namespace crnoma
