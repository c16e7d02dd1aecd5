#pragma once

#include <stdexcept>
#include <string>

namespace harmvmd {

/// Malformed or out-of-range input (CLI exit code 2).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// NaN, divergence or another failure of an iterative method (CLI exit code 3).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace harmvmd
