#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lpmabs/eventlog.hpp"

namespace lpmabs {

/// Parses ISO-8601 date-times as found in XES and CSV exports:
/// `YYYY-MM-DD[(T| )hh:mm[:ss[.fff]]][Z|(+|-)hh[:]mm]` or a bare date.
/// Times without an offset are taken as UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// `YYYY-MM-DDThh:mm:ss.fffZ`.
std::string format_timestamp(Timestamp ts);

}  // namespace lpmabs
