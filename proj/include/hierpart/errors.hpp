#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hierpart {

/// Malformed input or a violated precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but cannot be satisfied (e.g. more parts than vertices).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File access or parse failure. `line()` is 1-based, 0 when not tied to a line.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hierpart
