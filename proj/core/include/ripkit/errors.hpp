#pragma once

#include <stdexcept>
#include <string>

namespace ripkit {

// Input that can never be valid (bad config, violated precondition).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that was set up correctly but failed numerically.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LabelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ripkit
