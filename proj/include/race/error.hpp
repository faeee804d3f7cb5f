#pragma once

#include <stdexcept>
#include <string>

namespace race {

/// Violated precondition or run hypothesis (bad residue, eps out of range,
/// b1_hat * eps^2 * C^2 >= 1, ...). CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data. CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not reach its accuracy target. CLI exit code 4.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace race
