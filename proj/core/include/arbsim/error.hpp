#pragma once

#include <stdexcept>
#include <string>

namespace arbsim {

/// Thrown when an argument lies outside the domain an operation accepts
/// (negative reserves, fees >= 1, probabilities outside [0, 1], ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when an aggregate is requested over an empty or degenerate input.
class EmptyInputError : public std::runtime_error {
 public:
  explicit EmptyInputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arbsim
