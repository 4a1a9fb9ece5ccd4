#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lpmabs/eventlog.hpp"

namespace lpmabs {

struct CsvColumns {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::optional<std::string> time_column;
  char separator = ',';
};

/// Reads a flat event table (RFC 4180 quoting, header row required). Rows are grouped
/// by case in order of first appearance; within a case events are ordered by timestamp
/// when a time column is configured (stable, so ties keep row order), else by row order.
/// Columns other than case/activity/time are kept as event attributes.
///
/// Throws ConfigError when a named column is missing from the header and ParseError
/// (with the 1-based line) for unparseable timestamps or ragged rows.
EventLog parse_csv(std::string_view document, const CsvColumns& columns);
EventLog read_csv(const std::filesystem::path& path, const CsvColumns& columns);

}  // namespace lpmabs
