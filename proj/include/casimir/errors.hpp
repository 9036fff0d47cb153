#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace casimir {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (l <= 0, p = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A comparison or extraction would need coefficients at or beyond a series order.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Basis index does not match the shape of its module expression.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but outside the supported family
/// (non-integer spectrum, odd weights in deformed traces, ...).
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

/// A runtime-checked mathematical invariant failed; results would be wrong.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a representation expression, with a 1-based location.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column, std::vector<std::string> expected)
      : Error(format(message, line, column, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& message, int line, int column,
                            const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
      }
      out += ")";
    }
    return out;
  }

  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace casimir
