// SPDX-License-Identifier: Apache-2.0

#include "crnoma/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include <json.hpp>

#include "crnoma/error.hpp"
#include "crnoma/records_io.hpp"

namespace crnoma {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 260.0;  // legend column
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double x, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string series_name(const SweepRecord& r) {
  return r.metric + " " + r.scheme + " M=" + std::to_string(r.m) + " R0=" + fmt(r.r0, "%g") +
         " Rs=" + fmt(r.rs, "%g") + " " + r.source;
}

bool usable(const SweepRecord& r, bool y_log) {
  return r.error.empty() && std::isfinite(r.value) && (!y_log || r.value > 0.0);
}

}  // namespace

PlotMetadata plot_metadata(const std::vector<SweepRecord>& records) {
  PlotMetadata meta;
  meta.x_label = "P0 SNR (dB)";
  bool all_probability = !records.empty();
  std::vector<std::string> metrics;
  for (const SweepRecord& r : records) {
    const auto m = parse_metric(r.metric);
    if (!m || !is_probability(*m)) all_probability = false;
    if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end()) metrics.push_back(r.metric);
  }
  meta.y_log = all_probability;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    meta.y_label += (i ? ", " : "") + metrics[i];
  }
  for (const SweepRecord& r : records) {
    if (!usable(r, meta.y_log)) continue;
    const std::string name = series_name(r);
    if (std::find(meta.series.begin(), meta.series.end(), name) == meta.series.end()) {
      meta.series.push_back(name);
    }
  }
  return meta;
}

std::string render_svg(const std::vector<SweepRecord>& records) {
  const PlotMetadata meta = plot_metadata(records);
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  std::map<std::string, bool> markers;
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const SweepRecord& r : records) {
    if (!usable(r, meta.y_log)) continue;
    const double y = meta.y_log ? std::log10(r.value) : r.value;
    const std::string name = series_name(r);
    points[name].emplace_back(r.p0_db, y);
    markers[name] = r.source == "mc";
    x_min = std::min(x_min, r.p0_db);
    x_max = std::max(x_max, r.p0_db);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (points.empty()) {
    x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  }
  if (meta.y_log) {
    y_min = std::floor(y_min);
    y_max = std::max(std::ceil(y_max), y_min + 1.0);
  } else {
    if (y_min > 0.0) y_min = 0.0;
    if (y_max <= y_min) y_max = y_min + 1.0;
  }
  if (x_max <= x_min) x_max = x_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  nlohmann::json mj;
  mj["yscale"] = meta.y_log ? "log" : "linear";
  mj["xlabel"] = meta.x_label;
  mj["ylabel"] = meta.y_label;
  mj["series"] = meta.series;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, "%g") + "\" height=\"" +
         fmt(kHeight, "%g") + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<metadata id=\"crnoma-plot\">" + escape_xml(mj.dump()) + "</metadata>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
         "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks: decades on a log axis, five even steps otherwise.
  const int x_ticks = 5;
  for (int i = 0; i <= x_ticks; ++i) {
    const double x = x_min + (x_max - x_min) * i / x_ticks;
    svg += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + fmt(x, "%g") + "</text>\n";
  }
  const int decades = static_cast<int>(std::lround(y_max - y_min));
  const int y_ticks = meta.y_log ? std::min(decades, 20) : 5;
  for (int i = 0; i <= y_ticks; ++i) {
    const double y = y_min + (y_max - y_min) * i / y_ticks;
    const std::string text = meta.y_log ? "1e" + fmt(y, "%.0f") : fmt(y, "%g");
    svg += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + plot_w) + "\" y1=\"" + fmt(py(y)) +
           "\" y2=\"" + fmt(py(y)) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(y) + 4) + "\" text-anchor=\"end\">" +
           text + "</text>\n";
  }
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape_xml(meta.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + fmt(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape_xml(meta.y_label) + "</text>\n";

  std::size_t index = 0;
  for (const std::string& name : meta.series) {
    const std::string color = kPalette[index % std::size(kPalette)];
    const auto& pts = points[name];
    if (markers[name]) {
      for (const auto& [x, y] : pts) {
        svg += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"3\" fill=\"none\" stroke=\"" +
               color + "\"/>\n";
      }
    } else {
      svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : pts) svg += fmt(px(x)) + "," + fmt(py(y)) + " ";
      svg += "\"/>\n";
    }
    const double ly = kTop + 10 + 16 * static_cast<double>(index);
    svg += "<line x1=\"" + fmt(kWidth - kRight + 12) + "\" x2=\"" + fmt(kWidth - kRight + 32) +
           "\" y1=\"" + fmt(ly) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color + "\"" +
           (markers[name] ? " stroke-dasharray=\"2,3\"" : "") + "/>\n";
    svg += "<text x=\"" + fmt(kWidth - kRight + 36) + "\" y=\"" + fmt(ly + 4) +
           "\" font-size=\"10\">" + escape_xml(name) + "</text>\n";
    ++index;
  }
  svg += "</svg>\n";
  return svg;
}

void plot(const std::vector<SweepRecord>& records, const std::string& path) {
  if (records.empty()) throw UsageError("no records to plot");
  write_file(path, render_svg(records));
}

std::string svg_metadata_json(const std::string& svg) {
  const std::string open = "<metadata id=\"crnoma-plot\">";
  const auto begin = svg.find(open);
  const auto end = svg.find("</metadata>", begin);
  if (begin == std::string::npos || end == std::string::npos) return {};
  std::string body = svg.substr(begin + open.size(), end - begin - open.size());
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '&') {
      const auto semi = body.find(';', i);
      const std::string entity = body.substr(i, semi - i + 1);
      if (entity == "&amp;") out += '&';
      else if (entity == "&lt;") out += '<';
      else if (entity == "&gt;") out += '>';
      else if (entity == "&quot;") out += '"';
      i = semi;
    } else {
      out += body[i];
    }
  }
  return out;
}

}  // namespace crnoma
