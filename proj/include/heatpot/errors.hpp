#pragma once

#include <stdexcept>
#include <string>

namespace heatpot {

/// Invalid configuration: bad kernel order, mismatched dimensions,
/// malformed scenario.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A call-site argument outside the operation's contract.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested outside a function's domain (e.g. gradient at s <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed (series truncation, singular solve).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace heatpot
