// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnoma/sweep.hpp"

namespace crnoma {

enum class Format { Csv, Json };

std::optional<Format> parse_format(std::string_view name) noexcept;

/// Column order of every CSV and JSON record.
inline constexpr std::string_view kCsvHeader =
    "scheme,M,R0,Rs,P0_dB,Ps_dB,metric,source,value,stderr,n,seed,error";

/// Header plus one LF-terminated line per record. Floats carry 17 significant
/// digits; optional fields are left blank when absent.
std::string to_csv(const std::vector<SweepRecord>& records);
std::string to_json(const std::vector<SweepRecord>& records);

/// Inverse of to_json. NaN values are stored as null.
std::vector<SweepRecord> records_from_json(std::string_view text);
std::vector<SweepRecord> records_from_csv(std::string_view text);

/// Writes to `path`, or to stdout when path is empty or "-". Throws Error on
/// I/O failure and UsageError when `records` is empty.
void emit(const std::vector<SweepRecord>& records, Format format, const std::string& path);

/// JSON mirror of SweepSpec. Missing keys keep their defaults; unknown keys
/// and bad values raise UsageError.
SweepSpec spec_from_json(std::string_view text);
std::string spec_to_json(const SweepSpec& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace crnoma
