#pragma once

#include <stdexcept>
#include <string>

namespace dht {

// Bad argument values (out of range ids, mismatched shapes, loops).
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed a configured resource bound.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A homology degree was requested without the cells needed to compute it.
class insufficient_truncation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph input. Carries the 1-based line number (0 when unknown).
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dht
