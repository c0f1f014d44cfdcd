#pragma once

#include <stdexcept>
#include <string>

namespace box2el {

// Malformed input text. Carries the 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(std::move(message)), line(line), column(column) {}
  int line;
  int column;
};

// Well-formed input that violates a contract (unknown name, bad file,
// signature mismatch, unsupported axiom form, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diverged optimization, non-finite losses, and similar failures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configurable work cap was exceeded (e.g. saturation derivations).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace box2el
