#include "lpmabs/errors.hpp"

namespace lpmabs {

namespace {

std::string with_location(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::string out = message + " (line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ")";
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(with_location(message, line, column)), line_(line), column_(column) {}

SearchLimitExceeded::SearchLimitExceeded(const std::string& what, std::size_t limit)
    : Error(what + ": state limit of " + std::to_string(limit) + " exceeded"), limit_(limit) {}

}  // namespace lpmabs
