// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnoma/channel.hpp"

namespace crnoma {

enum class Metric { Outage, ErgodicRate, PType2, PBetter, PWorse, AvgBeta };
// Approx2 is emitted alongside Approx for the HSIC-PA outage (leading term only).
enum class Source { Analytic, Approx, Approx2, Oracle, Mc };

std::string_view to_string(Metric metric) noexcept;
std::string_view to_string(Source source) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;
std::optional<Source> parse_source(std::string_view name) noexcept;

/// Outage-type metrics are probabilities and are plotted on a log scale.
bool is_probability(Metric metric) noexcept;

/// Whether `metric` is defined for `scheme` (e.g. p_worse only for FSIC-PA).
bool applies(Metric metric, Scheme scheme) noexcept;

/// Inclusive SNR grid in dB, start + k * step for k = 0, 1, ...
struct SnrAxis {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
  /// Parses "A:B:S" or a single value "A".
  static SnrAxis parse(std::string_view text);
  std::string to_string() const;
};

struct SweepSpec {
  std::vector<Metric> metrics{Metric::Outage};
  std::vector<Scheme> schemes{Scheme::HsicPa, Scheme::FsicPa, Scheme::HsicNpa};
  std::vector<int> m_values{4};
  std::vector<double> r0_values{1.0};
  std::vector<double> rs_values{1.0};
  SnrAxis snr_db{0.0, 30.0, 10.0};
  double rho = 1.0;  // Ps = rho * P0; SNR in dB applies to P0
  std::vector<Source> sources{Source::Analytic, Source::Mc};
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  bool beta_type2_only = false;

  /// Throws UsageError on an empty list, a non-positive step or rho, or zero trials.
  void validate() const;
};

/// One (grid point, metric, source) value. Optional fields are present only
/// for Monte Carlo rows; `error` is non-empty (and value NaN) for a failed point.
struct SweepRecord {
  std::string scheme;
  int m = 0;
  double r0 = 0.0;
  double rs = 0.0;
  double p0_db = 0.0;
  double ps_db = 0.0;
  std::string metric;
  std::string source;
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::string error;
};

bool same_record(const SweepRecord& a, const SweepRecord& b) noexcept;

/// Evaluates every requested source at every grid point. Rows come out in
/// grid order (metric, scheme, M, R0, Rs, SNR, source). Monte Carlo points use
/// seed derive_seed(spec.seed, point index). `workers` = 0 uses every core.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int workers = 0);

/// Preset sweeps reproducing the figure set: "fig1" ... "fig7".
/// Throws UsageError for an unknown id.
SweepSpec figure_preset(std::string_view id);

struct ValidationCheck {
  std::string label;
  std::string kind;  // "abs_diff" or "z_score"
  double statistic;
  double threshold;
  bool passed;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const noexcept;
};

inline constexpr double kOracleAgreement = 1e-8;
inline constexpr double kMaxZScore = 4.0;

/// Pairs analytic rows with oracle rows (|diff| <= 1e-8) and Monte Carlo rows
/// with their analytic (or, lacking one, oracle) reference (z <= 4). Error rows fail.
ValidationReport validate_records(const std::vector<SweepRecord>& records);

}  // namespace crnoma
