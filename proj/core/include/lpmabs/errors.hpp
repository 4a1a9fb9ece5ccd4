#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpmabs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (XES, CSV, PNML, tree expressions, config files).
/// Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Caller-supplied configuration is inconsistent (missing columns, bad ranges, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An operation precondition was violated, e.g. firing a disabled transition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A bounded state-space search explored more states than allowed.
/// Distinct from a negative answer: the question is undecided.
class SearchLimitExceeded : public Error {
 public:
  SearchLimitExceeded(const std::string& what, std::size_t limit);

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// An activity pattern cannot be used for abstraction.
class InvalidPattern : public Error {
 public:
  using Error::Error;
};

}  // namespace lpmabs
