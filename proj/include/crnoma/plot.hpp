// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "crnoma/sweep.hpp"

namespace crnoma {

struct PlotMetadata {
  bool y_log = false;
  std::string x_label;
  std::string y_label;
  std::vector<std::string> series;
};

/// Axes and series for a value-vs-SNR chart. The y axis is logarithmic when
/// every metric present is a probability. Error rows are skipped.
PlotMetadata plot_metadata(const std::vector<SweepRecord>& records);

/// Standalone SVG: one polyline per (metric, scheme, M, R0, Rs, source), Monte
/// Carlo series as markers. The metadata is embedded as JSON in <metadata>.
std::string render_svg(const std::vector<SweepRecord>& records);

/// Writes render_svg to `path`. Throws UsageError when `records` is empty.
void plot(const std::vector<SweepRecord>& records, const std::string& path);

/// Extracts the JSON object embedded by render_svg.
std::string svg_metadata_json(const std::string& svg);

}  // namespace crnoma
