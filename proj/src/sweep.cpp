// SPDX-License-Identifier: Apache-2.0

#include "crnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "crnoma/closed_form.hpp"
#include "crnoma/error.hpp"
#include "crnoma/montecarlo.hpp"
#include "crnoma/oracle.hpp"
#include "crnoma/random.hpp"

namespace crnoma {

namespace {

constexpr std::pair<Metric, std::string_view> kMetricNames[] = {
    {Metric::Outage, "outage"},   {Metric::ErgodicRate, "ergodic_rate"},
    {Metric::PType2, "p_type2"},  {Metric::PBetter, "p_better"},
    {Metric::PWorse, "p_worse"},  {Metric::AvgBeta, "avg_beta"},
};

constexpr std::pair<Source, std::string_view> kSourceNames[] = {
    {Source::Analytic, "analytic"}, {Source::Approx, "approx"}, {Source::Approx2, "approx2"},
    {Source::Oracle, "oracle"},     {Source::Mc, "mc"},
};

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct GridPoint {
  Metric metric;
  Scheme scheme;
  int m;
  double r0;
  double rs;
  double snr_db;
};

SweepRecord base_record(const GridPoint& p, double rho) {
  SweepRecord r;
  r.scheme = std::string(to_string(p.scheme));
  r.m = p.m;
  r.r0 = p.r0;
  r.rs = p.rs;
  r.p0_db = p.snr_db;
  r.ps_db = p.snr_db + 10.0 * std::log10(rho);
  r.metric = std::string(to_string(p.metric));
  return r;
}

// Analytic or oracle value for (metric, scheme); nullopt if no such source.
using Evaluator = std::function<double(const SystemConfig&)>;

std::optional<Evaluator> analytic_evaluator(Metric metric, Scheme scheme) {
  switch (metric) {
    case Metric::Outage:
      if (scheme == Scheme::HsicPa) return [](const SystemConfig& c) { return outage_hsic_pa_exact(c).value; };
      if (scheme == Scheme::FsicPa) return [](const SystemConfig& c) { return outage_fsic_pa_exact(c).value; };
      return std::nullopt;
    case Metric::PType2:
      return [](const SystemConfig& c) { return p_type2(c).value; };
    case Metric::PBetter:
      if (scheme == Scheme::HsicPa) return [](const SystemConfig& c) { return p_better(c).value; };
      return [](const SystemConfig& c) { return p_better_fsic(c).value; };
    case Metric::PWorse:
      return [](const SystemConfig& c) { return p_worse_fsic(c).value; };
    default:
      return std::nullopt;
  }
}

std::vector<std::pair<Source, Evaluator>> approx_evaluators(Metric metric, Scheme scheme) {
  if (metric != Metric::Outage) return {};
  if (scheme == Scheme::HsicPa) {
    return {{Source::Approx, [](const SystemConfig& c) { return outage_hsic_pa_approx1(c).value; }},
            {Source::Approx2, [](const SystemConfig& c) { return outage_hsic_pa_approx2(c).value; }}};
  }
  if (scheme == Scheme::FsicPa) {
    return {{Source::Approx, [](const SystemConfig& c) { return outage_fsic_pa_approx(c).value; }}};
  }
  return {};
}

std::optional<Evaluator> oracle_evaluator(Metric metric, Scheme scheme) {
  switch (metric) {
    case Metric::Outage:
      return [scheme](const SystemConfig& c) { return oracle::outage_numeric(scheme, c).value; };
    case Metric::PType2:
      return [](const SystemConfig& c) { return oracle::p_better_numeric(c).denominator; };
    case Metric::PBetter:
      return [](const SystemConfig& c) { return oracle::p_better_numeric(c).ratio; };
    case Metric::PWorse:
      return [](const SystemConfig& c) { return 1.0 - oracle::p_better_numeric(c).ratio; };
    default:
      return std::nullopt;
  }
}

McEstimate run_mc(const GridPoint& p, const SystemConfig& c, const SweepSpec& spec,
                  std::uint64_t seed, const McOptions& options) {
  switch (p.metric) {
    case Metric::Outage:
      return estimate_outage(p.scheme, c, spec.trials, seed, options);
    case Metric::ErgodicRate:
      return estimate_ergodic_rate(p.scheme, c, spec.trials, seed, options);
    case Metric::PType2:
      return estimate_p_type2(c, spec.trials, seed, options);
    case Metric::PBetter: {
      const BetterWorse bw = estimate_better_worse(c, spec.trials, seed, options);
      return p.scheme == Scheme::HsicPa ? bw.better : bw.better_fsic;
    }
    case Metric::PWorse:
      return estimate_better_worse(c, spec.trials, seed, options).worse;
    case Metric::AvgBeta:
      return estimate_avg_beta(p.scheme, c, spec.trials, seed, spec.beta_type2_only, options);
  }
  throw DomainError("unhandled metric");
}

void append_value(std::vector<SweepRecord>& out, SweepRecord row, Source source,
                  const Evaluator& f, const SystemConfig* config, const std::string& config_error) {
  row.source = std::string(to_string(source));
  if (config == nullptr) {
    row.value = std::numeric_limits<double>::quiet_NaN();
    row.error = config_error;
  } else {
    try {
      row.value = f(*config);
    } catch (const std::exception& e) {
      row.value = std::numeric_limits<double>::quiet_NaN();
      row.error = e.what();
    }
  }
  out.push_back(std::move(row));
}

std::vector<SweepRecord> evaluate_point(const GridPoint& p, std::uint64_t index,
                                        const SweepSpec& spec, const McOptions& options) {
  std::vector<SweepRecord> out;
  const SweepRecord base = base_record(p, spec.rho);

  std::optional<SystemConfig> config;
  std::string config_error;
  try {
    config.emplace(SystemConfig::from_snr_db(p.m, p.snr_db, spec.rho, p.r0, p.rs));
  } catch (const std::exception& e) {
    config_error = e.what();
  }
  const SystemConfig* cfg = config ? &*config : nullptr;

  for (const Source source : spec.sources) {
    switch (source) {
      case Source::Analytic:
        if (auto f = analytic_evaluator(p.metric, p.scheme)) {
          append_value(out, base, source, *f, cfg, config_error);
        }
        break;
      case Source::Approx:
        for (const auto& [kind, f] : approx_evaluators(p.metric, p.scheme)) {
          append_value(out, base, kind, f, cfg, config_error);
        }
        break;
      case Source::Approx2:
        for (const auto& [kind, f] : approx_evaluators(p.metric, p.scheme)) {
          if (kind == Source::Approx2) append_value(out, base, kind, f, cfg, config_error);
        }
        break;
      case Source::Oracle:
        if (auto f = oracle_evaluator(p.metric, p.scheme)) {
          append_value(out, base, source, *f, cfg, config_error);
        }
        break;
      case Source::Mc: {
        SweepRecord row = base;
        row.source = "mc";
        const std::uint64_t seed = derive_seed(spec.seed, index);
        row.seed = seed;
        row.n = spec.trials;
        if (cfg == nullptr) {
          row.value = std::numeric_limits<double>::quiet_NaN();
          row.error = config_error;
        } else {
          try {
            const McEstimate e = run_mc(p, *cfg, spec, seed, options);
            row.value = e.mean;
            row.std_error = e.std_error;
            row.n = e.n;
          } catch (const std::exception& e) {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.error = e.what();
          }
        }
        out.push_back(std::move(row));
        break;
      }
    }
  }
  return out;
}

template <class T>
void require_nonempty(const std::vector<T>& v, const char* what) {
  if (v.empty()) throw UsageError(std::string("empty ") + what + " list");
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  for (const auto& [m, name] : kMetricNames) {
    if (m == metric) return name;
  }
  return "unknown";
}

std::string_view to_string(Source source) noexcept {
  for (const auto& [s, name] : kSourceNames) {
    if (s == source) return name;
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  for (const auto& [m, n] : kMetricNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

std::optional<Source> parse_source(std::string_view name) noexcept {
  for (const auto& [s, n] : kSourceNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

bool is_probability(Metric metric) noexcept {
  return metric != Metric::ErgodicRate && metric != Metric::AvgBeta;
}

bool applies(Metric metric, Scheme scheme) noexcept {
  switch (metric) {
    case Metric::Outage:
    case Metric::ErgodicRate:
    case Metric::AvgBeta:
      return true;
    case Metric::PType2:
    case Metric::PBetter:
      return scheme != Scheme::HsicNpa;
    case Metric::PWorse:
      return scheme == Scheme::FsicPa;
  }
  return false;
}

std::vector<double> SnrAxis::points() const {
  std::vector<double> out;
  if (!(step > 0.0)) return out;
  const double slack = 1e-9 * step;
  for (long k = 0;; ++k) {
    const double x = start + static_cast<double>(k) * step;
    if (x > stop + slack) break;
    out.push_back(x);
  }
  return out;
}

SnrAxis SnrAxis::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon == std::string_view::npos ? colon : colon - begin));
    if (colon == std::string_view::npos) break;
    begin = colon + 1;
  }
  SnrAxis axis;
  if (parts.size() == 1) {
    axis.start = axis.stop = parse_double(parts[0]);
    axis.step = 1.0;
  } else if (parts.size() == 3) {
    axis.start = parse_double(parts[0]);
    axis.stop = parse_double(parts[1]);
    axis.step = parse_double(parts[2]);
  } else {
    throw UsageError("SNR axis must be A:B:S or a single value, got '" + std::string(text) + "'");
  }
  if (!(axis.step > 0.0)) throw UsageError("SNR step must be positive");
  if (axis.stop < axis.start) throw UsageError("SNR stop is below start");
  return axis;
}

std::string SnrAxis::to_string() const {
  return format_number(start) + ":" + format_number(stop) + ":" + format_number(step);
}

void SweepSpec::validate() const {
  require_nonempty(metrics, "metric");
  require_nonempty(schemes, "scheme");
  require_nonempty(m_values, "M");
  require_nonempty(r0_values, "R0");
  require_nonempty(rs_values, "Rs");
  require_nonempty(sources, "source");
  if (!(snr_db.step > 0.0)) throw UsageError("SNR step must be positive");
  if (snr_db.stop < snr_db.start) throw UsageError("SNR stop is below start");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw UsageError("rho must be positive");
  if (trials < 1) throw UsageError("trials must be at least 1");
}

bool same_record(const SweepRecord& a, const SweepRecord& b) noexcept {
  const auto same_value = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  return a.scheme == b.scheme && a.m == b.m && a.r0 == b.r0 && a.rs == b.rs &&
         a.p0_db == b.p0_db && a.ps_db == b.ps_db && a.metric == b.metric &&
         a.source == b.source && same_value(a.value, b.value) && a.std_error == b.std_error &&
         a.n == b.n && a.seed == b.seed && a.error == b.error;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  std::vector<GridPoint> grid;
  const std::vector<double> snr = spec.snr_db.points();
  for (const Metric metric : spec.metrics) {
    for (const Scheme scheme : spec.schemes) {
      if (!applies(metric, scheme)) continue;
      for (const int m : spec.m_values) {
        for (const double r0 : spec.r0_values) {
          for (const double rs : spec.rs_values) {
            for (const double x : snr) grid.push_back({metric, scheme, m, r0, rs, x});
          }
        }
      }
    }
  }

  unsigned threads = workers > 0 ? static_cast<unsigned>(workers)
                                 : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));
  // Parallelism goes either across points or inside each Monte Carlo run.
  McOptions options;
  options.workers = threads > 1 ? 1 : 0;

  std::vector<std::vector<SweepRecord>> rows(grid.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      rows[i] = evaluate_point(grid[i], i, spec, options);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  std::vector<SweepRecord> out;
  for (auto& chunk : rows) {
    for (auto& r : chunk) out.push_back(std::move(r));
  }
  return out;
}

SweepSpec figure_preset(std::string_view id) {
  SweepSpec spec;
  spec.r0_values = {1.0};
  spec.rs_values = {1.0};
  spec.rho = 1.0;
  spec.trials = 1000000;
  if (id == "fig1" || id == "fig2") {
    spec.metrics = {Metric::Outage};
    spec.schemes = {id == "fig1" ? Scheme::HsicPa : Scheme::FsicPa};
    spec.m_values = {1, 2, 4};
    spec.rho = id == "fig1" ? 1.0 : 0.1;
    spec.snr_db = {0.0, 60.0, 2.0};
    spec.sources = {Source::Analytic, Source::Approx, Source::Mc};
  } else if (id == "fig3") {
    spec.metrics = {Metric::Outage};
    spec.schemes = {Scheme::HsicPa, Scheme::FsicPa, Scheme::HsicNpa};
    spec.m_values = {4};
    spec.r0_values = {1.0, 4.0};
    spec.snr_db = {0.0, 60.0, 2.0};
    spec.sources = {Source::Analytic, Source::Mc};
  } else if (id == "fig4") {
    spec.metrics = {Metric::ErgodicRate};
    spec.schemes = {Scheme::HsicPa, Scheme::FsicPa, Scheme::HsicNpa};
    spec.m_values = {4};
    spec.snr_db = {0.0, 50.0, 2.0};
    spec.sources = {Source::Mc};
  } else if (id == "fig5") {
    spec.metrics = {Metric::PType2};
    spec.schemes = {Scheme::HsicPa};
    spec.m_values = {4};
    spec.snr_db = {0.0, 50.0, 2.0};
    spec.sources = {Source::Analytic, Source::Mc};
  } else if (id == "fig6") {
    spec.metrics = {Metric::PBetter, Metric::PWorse};
    spec.schemes = {Scheme::HsicPa, Scheme::FsicPa};
    spec.m_values = {4};
    spec.snr_db = {0.0, 50.0, 2.0};
    spec.sources = {Source::Analytic, Source::Mc};
  } else if (id == "fig7") {
    spec.metrics = {Metric::AvgBeta};
    spec.schemes = {Scheme::HsicPa, Scheme::FsicPa};
    spec.m_values = {4};
    spec.snr_db = {0.0, 50.0, 2.0};
    spec.sources = {Source::Mc};
  } else {
    throw UsageError("unknown figure '" + std::string(id) + "' (expected fig1 ... fig7)");
  }
  return spec;
}

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport validate_records(const std::vector<SweepRecord>& records) {
  using Key = std::tuple<std::string, std::string, int, double, double, double, double>;
  struct Group {
    const SweepRecord* analytic = nullptr;
    const SweepRecord* oracle = nullptr;
    const SweepRecord* mc = nullptr;
  };
  std::map<Key, Group> groups;
  std::vector<Key> order;
  ValidationReport report;

  const auto label = [](const SweepRecord& r) {
    return r.metric + " " + r.scheme + " M=" + std::to_string(r.m) + " R0=" + format_number(r.r0) +
           " Rs=" + format_number(r.rs) + " P0=" + format_number(r.p0_db) + "dB Ps=" +
           format_number(r.ps_db) + "dB";
  };

  for (const SweepRecord& r : records) {
    if (!r.error.empty()) {
      report.checks.push_back({label(r) + " [" + r.source + "]: " + r.error, "error",
                               std::numeric_limits<double>::quiet_NaN(), 0.0, false});
      continue;
    }
    const Key key{r.metric, r.scheme, r.m, r.r0, r.rs, r.p0_db, r.ps_db};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    if (r.source == "analytic") it->second.analytic = &r;
    if (r.source == "oracle") it->second.oracle = &r;
    if (r.source == "mc") it->second.mc = &r;
  }

  for (const Key& key : order) {
    const Group& g = groups[key];
    if (g.analytic && g.oracle) {
      const double diff = std::abs(g.analytic->value - g.oracle->value);
      report.checks.push_back({label(*g.analytic) + " analytic vs oracle", "abs_diff", diff,
                               kOracleAgreement, diff <= kOracleAgreement});
    }
    const SweepRecord* reference = g.analytic ? g.analytic : g.oracle;
    if (g.mc && reference) {
      const auto metric = parse_metric(g.mc->metric);
      McEstimate e;
      e.mean = g.mc->value;
      e.std_error = g.mc->std_error.value_or(0.0);
      e.n = g.mc->n.value_or(0);
      const double z = z_score(e, reference->value, metric && is_probability(*metric));
      report.checks.push_back({label(*g.mc) + " mc vs " + reference->source, "z_score", z,
                               kMaxZScore, z <= kMaxZScore});
    }
  }
  return report;
}

}  // namespace crnoma
