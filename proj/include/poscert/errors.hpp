#pragma once

#include <stdexcept>
#include <string>

namespace poscert {

/// Syntax error with a 1-based position. `line` is 0 when the text did not
/// come from a file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The description without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A configured cap (degree, Pólya exponent, blow-up size, loop count) was hit.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poscert
