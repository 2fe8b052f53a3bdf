#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpcost {

/// Raised when a caller violates an operation's input contract
/// (missing labels, mismatched views, out-of-range parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the file parsers. Line and column are 1-based; column counts
/// comma-separated fields, and 0 means the whole line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) +
                           (column ? ", column " + std::to_string(column) : std::string()) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace dpcost
