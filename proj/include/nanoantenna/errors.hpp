#pragma once

#include <stdexcept>
#include <string>

namespace nanoantenna {

/// Invalid physical or configuration input. The message names the offending field.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: ill-conditioned systems, step-size underflow, quadrature trouble.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nanoantenna
