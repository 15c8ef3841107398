#pragma once

#include <stdexcept>
#include <string>

namespace normsim {

/// Raised when a model input violates a documented precondition.
class ModelError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but degenerate (zero group size, zero-variance regressor, ...).
class DegenerateInputError : public ModelError {
public:
  using ModelError::ModelError;
};

/// A closed form that assumes interior actions was applied where an action sits at the corner a = 0.
class CornerViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace normsim
