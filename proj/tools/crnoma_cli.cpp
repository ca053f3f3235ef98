// SPDX-License-Identifier: Apache-2.0
//
// crnoma: sweeps, figure presets and three-way validation from the shell.
// Exit status: 0 success, 1 failure (validation or runtime), 2 usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crnoma/error.hpp"
#include "crnoma/plot.hpp"
#include "crnoma/records_io.hpp"
#include "crnoma/sweep.hpp"

namespace {

using namespace crnoma;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Command-line overrides; an option left unset keeps the base spec's value.
struct Overrides {
  std::string config_path;
  std::vector<std::string> schemes;
  std::vector<std::string> metrics;
  std::vector<int> m;
  std::vector<double> r0;
  std::vector<double> rs;
  std::string snr_db;
  std::optional<double> rho;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sources;
  bool beta_type2_only = false;
  std::string format = "csv";
  std::string out;
  std::string plot_path;
  int workers = 0;
};

void add_common(CLI::App* cmd, Overrides& o, bool with_sources) {
  cmd->add_option("--config", o.config_path, "JSON sweep description (flags override it)");
  cmd->add_option("--scheme", o.schemes, "HSIC-PA, FSIC-PA, HSIC-NPA")->delimiter(',');
  cmd->add_option("--metric", o.metrics,
                  "outage, ergodic_rate, p_type2, p_better, p_worse, avg_beta")
      ->delimiter(',');
  cmd->add_option("--m", o.m, "number of secondary users (list)")->delimiter(',');
  cmd->add_option("--r0", o.r0, "primary target rate in BPCU (list)")->delimiter(',');
  cmd->add_option("--rs", o.rs, "secondary target rate in BPCU (list)")->delimiter(',');
  cmd->add_option("--snr-db", o.snr_db, "P0 SNR axis A:B:S or a single value");
  cmd->add_option("--rho", o.rho, "power ratio Ps/P0");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
  cmd->add_option("--seed", o.seed, "master seed");
  if (with_sources) {
    cmd->add_option("--sources", o.sources, "analytic, approx, oracle, mc")->delimiter(',');
  }
  cmd->add_flag("--beta-type2-only", o.beta_type2_only, "average beta over type-II trials only");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--plot", o.plot_path, "also write an SVG plot here");
  cmd->add_option("--workers", o.workers, "worker threads, 0 = all cores");
}

template <class Enum, class Parser>
std::vector<Enum> parse_names(const std::vector<std::string>& names, Parser parser, const char* what) {
  std::vector<Enum> out;
  for (const auto& name : names) {
    const auto value = parser(name);
    if (!value) throw UsageError(std::string("unknown ") + what + " '" + name + "'");
    out.push_back(*value);
  }
  return out;
}

SweepSpec apply(SweepSpec spec, const Overrides& o) {
  if (!o.config_path.empty()) spec = spec_from_json(read_file(o.config_path));
  if (!o.schemes.empty()) spec.schemes = parse_names<Scheme>(o.schemes, parse_scheme, "scheme");
  if (!o.metrics.empty()) spec.metrics = parse_names<Metric>(o.metrics, parse_metric, "metric");
  if (!o.sources.empty()) spec.sources = parse_names<Source>(o.sources, parse_source, "source");
  if (!o.m.empty()) spec.m_values = o.m;
  if (!o.r0.empty()) spec.r0_values = o.r0;
  if (!o.rs.empty()) spec.rs_values = o.rs;
  if (!o.snr_db.empty()) spec.snr_db = SnrAxis::parse(o.snr_db);
  if (o.rho) spec.rho = *o.rho;
  if (o.trials) spec.trials = *o.trials;
  if (o.seed) spec.seed = *o.seed;
  if (o.beta_type2_only) spec.beta_type2_only = true;
  spec.validate();
  return spec;
}

void write_outputs(const std::vector<SweepRecord>& records, const Overrides& o) {
  emit(records, *parse_format(o.format), o.out);
  if (!o.plot_path.empty()) plot(records, o.plot_path);
}

int run_and_emit(const SweepSpec& spec, const Overrides& o) {
  write_outputs(run_sweep(spec, o.workers), o);
  return 0;
}

int run_validate(const SweepSpec& spec, const Overrides& o) {
  const auto records = run_sweep(spec, o.workers);
  if (!o.out.empty()) write_outputs(records, o);
  const ValidationReport report = validate_records(records);
  std::size_t failures = 0;
  for (const ValidationCheck& c : report.checks) {
    if (!c.passed) ++failures;
    std::printf("%s %s %s=%.3g (limit %.3g)\n", c.passed ? "PASS" : "FAIL", c.label.c_str(),
                c.kind.c_str(), c.statistic, c.threshold);
  }
  std::printf("%zu checks, %zu failed\n", report.checks.size(), failures);
  return report.passed() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage, rate and power-adaptation statistics for a cognitive-radio NOMA uplink"};
  app.require_subcommand(1);

  Overrides o;
  auto* analytic = app.add_subcommand("analytic", "closed-form values and high-SNR approximations");
  add_common(analytic, o, false);
  auto* oracle = app.add_subcommand("oracle", "values by numerical integration");
  add_common(oracle, o, false);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
  add_common(simulate, o, false);
  auto* sweep = app.add_subcommand("sweep", "any combination of sources over a grid");
  add_common(sweep, o, true);
  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "run a figure preset (fig1 ... fig7)");
  figure->add_option("id", figure_id, "figure id")->required();
  add_common(figure, o, true);
  auto* validate = app.add_subcommand("validate", "cross-check analytic, oracle and Monte Carlo");
  add_common(validate, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analytic) {
      SweepSpec base;
      base.sources = {Source::Analytic, Source::Approx};
      return run_and_emit(apply(base, o), o);
    }
    if (*oracle) {
      SweepSpec base;
      base.sources = {Source::Oracle};
      return run_and_emit(apply(base, o), o);
    }
    if (*simulate) {
      SweepSpec base;
      base.sources = {Source::Mc};
      return run_and_emit(apply(base, o), o);
    }
    if (*sweep) return run_and_emit(apply(SweepSpec{}, o), o);
    if (*figure) return run_and_emit(apply(figure_preset(figure_id), o), o);
    if (*validate) {
      SweepSpec base;
      base.metrics = {Metric::Outage, Metric::PType2, Metric::PBetter, Metric::PWorse};
      base.m_values = {1, 2, 4};
      base.trials = 100000;
      base.sources = {Source::Analytic, Source::Oracle, Source::Mc};
      SweepSpec spec = apply(base, o);
      spec.sources = {Source::Analytic, Source::Oracle, Source::Mc};
      return run_validate(spec, o);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "crnoma: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "crnoma: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
