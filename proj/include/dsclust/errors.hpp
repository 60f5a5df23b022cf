#pragma once

#include <stdexcept>

namespace dsclust {

// Dempster's rule is undefined when the sources fully contradict each other
// (normalization constant 1 - kappa would be zero).
struct TotalConflictError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to frames of different sizes.
struct FrameMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration was asked for more work than the configured budget.
struct TooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The interaction spectrum gives a non-positive starting temperature.
struct DegenerateSpectrumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bond state has a vacant bond inside an occupied bond-cluster, so the
// closed-form cluster weight does not apply.
struct NotGroundStateFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dsclust
