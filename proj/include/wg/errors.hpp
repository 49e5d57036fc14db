#pragma once

#include <stdexcept>
#include <string>

namespace wg {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad inputs: out-of-range arguments, malformed configs, violated preconditions.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Numerical failure: non-convergence, singular systems.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what, double best = 0.0)
      : Error(what), best_estimate(best) {}
  double best_estimate;
};

/// Filesystem / serialization problems.
class IoError : public Error {
public:
  using Error::Error;
};

/// Frequency too close to n*pi/h_min or n*pi/h_max; carries the margin delta(k).
class ForbiddenFrequencyError : public ValidationError {
public:
  ForbiddenFrequencyError(const std::string& what, double delta_k)
      : ValidationError(what), delta(delta_k) {}
  double delta;
};

/// Quadrature or iterative solver ran out of budget; carries the best estimate.
class ConvergenceError : public NumericError {
public:
  using NumericError::NumericError;
};

}  // namespace wg
