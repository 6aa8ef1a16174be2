#pragma once

#include <stdexcept>
#include <string>

namespace kickspec {

// Invalid physical or mathematical input (j = 0 where division by j occurs,
// non-positive periods, mismatched dimensions, degenerate ranges).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed or contradictory run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LAPACK failure or a violated numerical invariant on computed output.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kickspec
