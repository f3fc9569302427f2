#pragma once

#include <stdexcept>
#include <string>

namespace vopt {

/// Bad parameter or shape mismatch at an API boundary.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input data (CSV, JSON).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The cone violates the pointed/solid assumptions.
class DegenerateCone : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of iterations.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Boundary classification tolerance shared by every module.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace vopt
