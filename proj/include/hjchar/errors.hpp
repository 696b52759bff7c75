#pragma once

#include <stdexcept>
#include <string>

namespace hjchar {

/// Invalid parameters or a mode/problem mismatch, detected before any compute.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested an operation the object cannot provide (e.g. g* of non-convex data).
class UnsupportedOperationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Failure while evaluating a trajectory or functional. The optimizer treats any
/// EvaluationError as a signal to resample the current trial.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The co-state reached the non-differentiable set of a degree-1 homogeneous term.
class SingularPointError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// A state, co-state or functional value overflowed or became NaN.
class NonFiniteStateError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

}  // namespace hjchar
