#pragma once

#include <stdexcept>
#include <string>

namespace pmpg {

/// Configuration / precondition problems (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failures: degenerate weights, singular models, failed solves
/// (CLI exit code 3).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (CLI exit code 4).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pmpg
