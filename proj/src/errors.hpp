// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace softring {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Result magnitude exceeds the double range. `sign` is the sign of the
// value that would have been returned.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, int sign)
      : std::overflow_error(what), sign_(sign) {}
  int sign() const noexcept { return sign_; }

 private:
  int sign_;
};

// Evaluation hit a singular point (a pole of the secular matrix diagonal,
// a pole of a limiting expansion).
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested eigenvalue branch does not exist (absorbed into the
// essential spectrum, empty window, ...).
class NoLevelError : public std::runtime_error {
 public:
  NoLevelError(const std::string& what, double critical_value)
      : std::runtime_error(what), critical_value_(critical_value) {}
  double critical_value() const noexcept { return critical_value_; }

 private:
  double critical_value_;
};

// Malformed configuration text. `line` is 1-based, 0 when not applicable.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace softring
