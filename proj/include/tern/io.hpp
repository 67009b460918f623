#pragma once

#include <string>
#include <string_view>

#include "tern/dataset.hpp"

namespace tern {

// Shortest round-tripping decimal form of x (locale independent).
std::string format_double(double x);

// Strict parse of a full token; `what` names the field in error messages.
// Throws DataError on anything but a complete finite-or-infinite number.
double parse_double(std::string_view text, const std::string& what);

// CSV ingestion for the three input schemas. A header row is required;
// columns are matched by name, extra columns are ignored, order is free.
//   Normal:    x
//   TwoSample: group,y   (group must be "a" or "b")
//   Gravity:   height,time
// Throws DataError with the offending line number on malformed input.
Dataset read_dataset_csv(const std::string& path, Dataset::Kind kind);

// Parses CSV text already in memory (same rules as read_dataset_csv).
Dataset parse_dataset_csv(const std::string& text, Dataset::Kind kind,
                          const std::string& origin);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Current UTC time as an ISO-8601 string, e.g. 2026-08-22T12:34:56Z.
std::string iso8601_utc_now();

}  // namespace tern
