// SPDX-License-Identifier: Apache-2.0

#include "crnoma/records_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "crnoma/error.hpp"

namespace crnoma {

using nlohmann::json;

namespace {

std::string g17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_csv_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw UsageError("bad number in CSV: '" + s + "'");
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

template <class T, class Parse>
std::vector<T> parse_list(const json& j, const char* key, Parse parse) {
  if (!j.is_array()) throw UsageError(std::string("'") + key + "' must be an array");
  std::vector<T> out;
  for (const json& item : j) out.push_back(parse(item));
  return out;
}

template <class Enum, class Parser>
Enum enum_from(const json& item, Parser parser, const char* what) {
  if (!item.is_string()) throw UsageError(std::string(what) + " must be a string");
  const auto value = parser(item.get<std::string>());
  if (!value) throw UsageError(std::string("unknown ") + what + " '" + item.get<std::string>() + "'");
  return *value;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRecord& r : records) {
    out += csv_field(r.scheme) + ',' + std::to_string(r.m) + ',' + g17(r.r0) + ',' + g17(r.rs) +
           ',' + g17(r.p0_db) + ',' + g17(r.ps_db) + ',' + csv_field(r.metric) + ',' +
           csv_field(r.source) + ',' + g17(r.value) + ',' +
           (r.std_error ? g17(*r.std_error) : std::string()) + ',' +
           (r.n ? std::to_string(*r.n) : std::string()) + ',' +
           (r.seed ? std::to_string(*r.seed) : std::string()) + ',' + csv_field(r.error) + '\n';
  }
  return out;
}

std::vector<SweepRecord> records_from_csv(std::string_view text) {
  std::vector<SweepRecord> out;
  std::size_t begin = 0;
  bool header = true;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    if (header) {
      if (line != kCsvHeader) throw UsageError("unexpected CSV header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 13) throw UsageError("CSV row has " + std::to_string(f.size()) + " fields");
    SweepRecord r;
    r.scheme = f[0];
    r.m = std::stoi(f[1]);
    r.r0 = parse_csv_double(f[2]);
    r.rs = parse_csv_double(f[3]);
    r.p0_db = parse_csv_double(f[4]);
    r.ps_db = parse_csv_double(f[5]);
    r.metric = f[6];
    r.source = f[7];
    r.value = parse_csv_double(f[8]);
    if (!f[9].empty()) r.std_error = parse_csv_double(f[9]);
    if (!f[10].empty()) r.n = std::stoull(f[10]);
    if (!f[11].empty()) r.seed = std::stoull(f[11]);
    r.error = f[12];
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_json(const std::vector<SweepRecord>& records) {
  json arr = json::array();
  for (const SweepRecord& r : records) {
    json j;
    j["scheme"] = r.scheme;
    j["M"] = r.m;
    j["R0"] = r.r0;
    j["Rs"] = r.rs;
    j["P0_dB"] = r.p0_db;
    j["Ps_dB"] = r.ps_db;
    j["metric"] = r.metric;
    j["source"] = r.source;
    j["value"] = number_or_null(r.value);
    j["stderr"] = r.std_error ? number_or_null(*r.std_error) : json(nullptr);
    j["n"] = r.n ? json(*r.n) : json(nullptr);
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    j["error"] = r.error;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<SweepRecord> records_from_json(std::string_view text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw UsageError("records JSON must be an array");
  std::vector<SweepRecord> out;
  try {
    for (const json& j : arr) {
      SweepRecord r;
      r.scheme = j.at("scheme").get<std::string>();
      r.m = j.at("M").get<int>();
      r.r0 = j.at("R0").get<double>();
      r.rs = j.at("Rs").get<double>();
      r.p0_db = j.at("P0_dB").get<double>();
      r.ps_db = j.at("Ps_dB").get<double>();
      r.metric = j.at("metric").get<std::string>();
      r.source = j.at("source").get<std::string>();
      r.value = number_from(j.at("value"));
      if (!j.at("stderr").is_null()) r.std_error = j.at("stderr").get<double>();
      if (!j.at("n").is_null()) r.n = j.at("n").get<std::uint64_t>();
      if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
      r.error = j.value("error", std::string());
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed record: ") + e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  if (path.empty() || path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    if (!std::cout) throw Error("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error("failed writing '" + path + "'");
}

void emit(const std::vector<SweepRecord>& records, Format format, const std::string& path) {
  if (records.empty()) throw UsageError("no records to write");
  write_file(path, format == Format::Csv ? to_csv(records) : to_json(records));
}

SweepSpec spec_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  SweepSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "metrics") {
        spec.metrics = parse_list<Metric>(value, "metrics", [](const json& v) {
          return enum_from<Metric>(v, parse_metric, "metric");
        });
      } else if (key == "schemes") {
        spec.schemes = parse_list<Scheme>(value, "schemes", [](const json& v) {
          return enum_from<Scheme>(v, parse_scheme, "scheme");
        });
      } else if (key == "sources") {
        spec.sources = parse_list<Source>(value, "sources", [](const json& v) {
          return enum_from<Source>(v, parse_source, "source");
        });
      } else if (key == "m") {
        spec.m_values = parse_list<int>(value, "m", [](const json& v) { return v.get<int>(); });
      } else if (key == "r0") {
        spec.r0_values = parse_list<double>(value, "r0", [](const json& v) { return v.get<double>(); });
      } else if (key == "rs") {
        spec.rs_values = parse_list<double>(value, "rs", [](const json& v) { return v.get<double>(); });
      } else if (key == "snr_db") {
        if (value.is_string()) {
          spec.snr_db = SnrAxis::parse(value.get<std::string>());
        } else {
          spec.snr_db = {value.at("start").get<double>(), value.at("stop").get<double>(),
                         value.at("step").get<double>()};
        }
      } else if (key == "rho") {
        spec.rho = value.get<double>();
      } else if (key == "trials") {
        spec.trials = value.get<std::uint64_t>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "beta_type2_only") {
        spec.beta_type2_only = value.get<bool>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string spec_to_json(const SweepSpec& spec) {
  json j;
  j["metrics"] = json::array();
  for (const Metric m : spec.metrics) j["metrics"].push_back(std::string(to_string(m)));
  j["schemes"] = json::array();
  for (const Scheme s : spec.schemes) j["schemes"].push_back(std::string(to_string(s)));
  j["m"] = spec.m_values;
  j["r0"] = spec.r0_values;
  j["rs"] = spec.rs_values;
  j["snr_db"] = {{"start", spec.snr_db.start}, {"stop", spec.snr_db.stop}, {"step", spec.snr_db.step}};
  j["rho"] = spec.rho;
  j["sources"] = json::array();
  for (const Source s : spec.sources) j["sources"].push_back(std::string(to_string(s)));
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["beta_type2_only"] = spec.beta_type2_only;
  return j.dump(2) + "\n";
}

}  // namespace crnoma
