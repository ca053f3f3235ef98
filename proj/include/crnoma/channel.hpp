// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnoma/config.hpp"
#include "crnoma/random.hpp"

namespace crnoma {

/// Secondary-user admission schemes.
///  - HsicPa: hybrid SIC with power adaptation.
///  - FsicPa: fixed SIC (secondary always decoded second) with power adaptation.
///  - HsicNpa: hybrid SIC at full power, the benchmark.
enum class Scheme { HsicPa, FsicPa, HsicNpa };

inline constexpr Scheme kAllSchemes[] = {Scheme::HsicPa, Scheme::FsicPa, Scheme::HsicNpa};

std::string_view to_string(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

enum class SicStage { First, Second };
enum class UserType { I, II };

std::string_view to_string(SicStage stage) noexcept;
std::string_view to_string(UserType type) noexcept;

/// One fading realization. `h2` is sorted ascending, so h2.back() is |h_M|^2.
struct ChannelDraw {
  double g2 = 0.0;
  std::vector<double> h2;
};

/// Decision for a single secondary user in isolation.
struct UserDecision {
  double sinr;  // rate = log2(1 + sinr)
  double beta;
  SicStage stage;
  UserType type;
  double primary_interference;
};

/// Per-realization scheme decision.
struct ServedOutcome {
  Scheme scheme;
  int served_index;  // 1-based
  double rate;       // bits per channel use
  double beta;
  SicStage stage;
  UserType user_type;
  double primary_interference;
};

/// Draws g2 ~ Exp(1) first, then M i.i.d. Exp(1) gains, sorted ascending.
ChannelDraw sample_channel(const SystemConfig& config, Philox4x32& rng);

/// Same as sample_channel but reuses the storage of `draw`.
void sample_channel_into(const SystemConfig& config, Philox4x32& rng, ChannelDraw& draw);

/// Largest secondary received power the primary tolerates at its target rate:
/// max{0, P0 g2 / eps0 - 1}.
double tau(double g2, const SystemConfig& config) noexcept;

/// Achievable SINR, power coefficient and decoding stage for one user with
/// gain h2 given the primary gain (through tau_g).
UserDecision assess_user(Scheme scheme, double g2, double tau_g, double h2,
                         const SystemConfig& config) noexcept;

/// Evaluates every user under `scheme` and serves the rate-maximizing one,
/// ties going to the largest index.
ServedOutcome evaluate_scheme(Scheme scheme, const ChannelDraw& draw, const SystemConfig& config);

double sinr_to_rate(double sinr) noexcept;

}  // namespace crnoma
