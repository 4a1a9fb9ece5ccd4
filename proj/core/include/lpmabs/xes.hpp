#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lpmabs/eventlog.hpp"

namespace lpmabs {

/// Reads the XES subset used by common process-mining exports: `log > trace > event`
/// with flat typed attributes. `concept:name` gives the activity (events) or case id
/// (traces), `lifecycle:transition` start/complete gives the lifecycle, and
/// `time:timestamp` the timestamp. Every other event attribute lands in
/// `Event::attributes` as text; nested attributes are skipped.
///
/// Throws ParseError with line/column for malformed XML and with the trace index when
/// an event has no `concept:name`.
EventLog parse_xes(std::string_view document);
EventLog read_xes(const std::filesystem::path& path);

std::string write_xes(const EventLog& log);
void write_xes(const EventLog& log, std::ostream& out);

}  // namespace lpmabs
