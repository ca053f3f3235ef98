// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "crnoma/error.hpp"
#include "crnoma/plot.hpp"
#include "crnoma/records_io.hpp"
#include "crnoma/sweep.hpp"

using namespace crnoma;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.metrics = {Metric::Outage};
  spec.schemes = {Scheme::HsicPa};
  spec.m_values = {2};
  spec.snr_db = {0.0, 20.0, 2.0};
  spec.sources = {Source::Analytic};
  return spec;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("crnoma_test_" + name);
}

int run_cli(const std::string& args) {
  const std::string command = std::string(CRNOMA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("snr axis") {
  CHECK(SnrAxis::parse("0:20:2").points().size() == 11);
  CHECK(SnrAxis::parse("0:60:2").points().back() == 60.0);
  CHECK(SnrAxis::parse("0:1:0.1").points().size() == 11);
  CHECK(SnrAxis::parse("15").points() == std::vector<double>{15.0});
  CHECK_THROWS_AS(SnrAxis::parse("0:10:0"), UsageError);
  CHECK_THROWS_AS(SnrAxis::parse("10:0:1"), UsageError);
  CHECK_THROWS_AS(SnrAxis::parse("a:b:c"), UsageError);
  CHECK_THROWS_AS(SnrAxis::parse("0:10"), UsageError);
}

TEST_CASE("spec validation") {
  SweepSpec spec = small_spec();
  CHECK_NOTHROW(spec.validate());
  spec.sources.clear();
  CHECK_THROWS_AS(spec.validate(), UsageError);
  spec = small_spec();
  spec.rho = 0.0;
  CHECK_THROWS_AS(spec.validate(), UsageError);
  spec = small_spec();
  spec.snr_db.step = -1.0;
  CHECK_THROWS_AS(spec.validate(), UsageError);
}

TEST_CASE("sweep rows") {
  const auto records = run_sweep(small_spec());
  REQUIRE(records.size() == 11);
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(records[k].p0_db == 2.0 * k);
    CHECK(records[k].source == "analytic");
    CHECK_FALSE(records[k].std_error.has_value());
    CHECK_FALSE(records[k].n.has_value());
  }
  CHECK(count_lines(to_csv(records)) == 12);

  SweepSpec spec = small_spec();
  spec.schemes = {Scheme::HsicPa, Scheme::FsicPa, Scheme::HsicNpa};
  spec.rho = 0.1;
  spec.sources = {Source::Analytic, Source::Oracle, Source::Mc};
  spec.trials = 20000;
  const auto mixed = run_sweep(spec);
  // Analytic rows for two schemes, oracle and mc for all three.
  CHECK(mixed.size() == 11 * (2 + 3 + 3));
  for (const auto& r : mixed) {
    CHECK(r.ps_db == doctest::Approx(r.p0_db - 10.0));
    CHECK(r.std_error.has_value() == (r.source == "mc"));
    CHECK(r.error.empty());
  }
  const ValidationReport report = validate_records(mixed);
  CHECK(report.passed());
  CHECK(report.checks.size() == 11 * (2 + 3));

  // Same spec, same bytes, whatever the worker count.
  CHECK(to_csv(run_sweep(spec, 1)) == to_csv(mixed));
  CHECK(to_csv(run_sweep(spec, 3)) == to_csv(mixed));
}

TEST_CASE("failed points become error rows") {
  SweepSpec spec = small_spec();
  spec.m_values = {2, 40};
  spec.snr_db = {10.0, 10.0, 1.0};
  const auto records = run_sweep(spec);
  REQUIRE(records.size() == 2);
  CHECK(records[0].error.empty());
  CHECK(std::isnan(records[1].value));
  CHECK_FALSE(records[1].error.empty());
  CHECK_FALSE(validate_records(records).passed());
}

TEST_CASE("figure presets") {
  CHECK(figure_preset("fig3").m_values == std::vector<int>{4});
  CHECK(figure_preset("fig3").r0_values == std::vector<double>{1.0, 4.0});
  CHECK(figure_preset("fig2").rho == 0.1);
  CHECK(figure_preset("fig1").m_values == std::vector<int>{1, 2, 4});
  CHECK(figure_preset("fig1").snr_db.stop == 60.0);
  CHECK(figure_preset("fig7").snr_db.stop == 50.0);
  CHECK(figure_preset("fig7").rs_values == std::vector<double>{1.0});
  for (const char* id : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}) {
    CHECK_NOTHROW(figure_preset(id).validate());
    CHECK(figure_preset(id).trials == 1000000);
  }
  CHECK_THROWS_AS(figure_preset("fig8"), UsageError);
}

TEST_CASE("serialization") {
  SweepSpec spec = small_spec();
  spec.sources = {Source::Analytic, Source::Mc};
  spec.trials = 1000;
  spec.m_values = {2, 99};
  auto records = run_sweep(spec);
  records[0].error = "quoted, \"message\"";

  const auto from_json = records_from_json(to_json(records));
  REQUIRE(from_json.size() == records.size());
  for (std::size_t k = 0; k < records.size(); ++k) CHECK(same_record(from_json[k], records[k]));

  const auto from_csv = records_from_csv(to_csv(records));
  REQUIRE(from_csv.size() == records.size());
  for (std::size_t k = 0; k < records.size(); ++k) CHECK(same_record(from_csv[k], records[k]));

  const std::string csv = to_csv(records);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);

  const SweepSpec back = spec_from_json(spec_to_json(spec));
  CHECK(spec_to_json(back) == spec_to_json(spec));
  CHECK(spec_from_json(R"({"snr_db": "0:10:5", "m": [3]})").snr_db.points().size() == 3);
  CHECK_THROWS_AS(spec_from_json(R"({"bogus": 1})"), UsageError);
  CHECK_THROWS_AS(spec_from_json(R"({"schemes": ["XYZ"]})"), UsageError);
  CHECK_THROWS_AS(spec_from_json("[1, 2"), UsageError);

  CHECK_THROWS_AS(emit({}, Format::Csv, temp_path("empty.csv").string()), UsageError);
  CHECK_THROWS_AS(emit(records, Format::Csv, "/nonexistent-dir/x.csv"), Error);
  const auto path = temp_path("rows.csv");
  emit(records, Format::Csv, path.string());
  CHECK(read_file(path.string()) == csv);
  std::filesystem::remove(path);
}

TEST_CASE("plots") {
  SweepSpec spec = small_spec();
  spec.sources = {Source::Analytic, Source::Approx};
  const auto records = run_sweep(spec);
  CHECK(plot_metadata(records).y_log);
  const std::string svg = render_svg(records);
  CHECK(svg.find("<svg") != std::string::npos);
  const auto meta = nlohmann::json::parse(svg_metadata_json(svg));
  CHECK(meta["yscale"] == "log");
  CHECK(meta["series"].size() == 3);

  SweepSpec rates = small_spec();
  rates.metrics = {Metric::ErgodicRate};
  rates.sources = {Source::Mc};
  rates.trials = 1000;
  const auto rate_meta = nlohmann::json::parse(svg_metadata_json(render_svg(run_sweep(rates))));
  CHECK(rate_meta["yscale"] == "linear");
  CHECK_THROWS_AS(plot({}, temp_path("none.svg").string()), UsageError);
}

TEST_CASE("command-line exit codes") {
  CHECK(run_cli("analytic --m 2 --snr-db 0:20:10") == 0);
  CHECK(run_cli("oracle --m 2 --snr-db 10 --scheme HSIC-NPA") == 0);
  CHECK(run_cli("simulate --m 2 --snr-db 10 --trials 1000 --format json") == 0);
  CHECK(run_cli("sweep --m 1 --snr-db 0:10:5 --sources analytic,oracle,mc --trials 1000") == 0);
  CHECK(run_cli("figure fig5 --snr-db 0:10:10 --trials 1000") == 0);
  CHECK(run_cli("validate --m 2 --snr-db 10 --trials 20000") == 0);
  // M above the closed-form cap produces error rows, which fail validation.
  CHECK(run_cli("validate --m 40 --snr-db 10 --trials 100 --metric outage --scheme HSIC-PA") == 1);
  CHECK(run_cli("figure fig9") == 2);
  CHECK(run_cli("sweep --snr-db 0:10:0") == 2);
  CHECK(run_cli("sweep --scheme nope") == 2);
  CHECK(run_cli("sweep --format xml") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("analytic --out /nonexistent-dir/out.csv") == 1);

  const auto csv = temp_path("cli.csv");
  const auto svg = temp_path("cli.svg");
  REQUIRE(run_cli("analytic --m 1,2 --snr-db 0:10:5 --out " + csv.string() + " --plot " + svg.string()) == 0);
  CHECK(count_lines(read_file(csv.string())) == 1 + 2 * 3 * (1 + 2) + 2 * 3 * (1 + 1));
  CHECK(read_file(svg.string()).find("<metadata") != std::string::npos);
  std::filesystem::remove(csv);
  std::filesystem::remove(svg);
}
