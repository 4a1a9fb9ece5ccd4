#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lpmabs {

std::string xml_escape(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

/// Percent-encodes `%`, tab, CR, LF and every character in `reserved`.
std::string percent_encode(std::string_view text, std::string_view reserved = "");
std::string percent_decode(std::string_view text);

/// Whole-file helpers; throw Error with the path on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Parses `key = value` lines; `#` starts a comment line. Repeated keys are kept in order.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view document);

}  // namespace lpmabs
