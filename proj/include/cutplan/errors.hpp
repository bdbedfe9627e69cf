#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cutplan {

/// Iterative eigen-solver gave up before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Threshold search could not find a successful efficiency below its cap.
class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cutplan
