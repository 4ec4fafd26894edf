#pragma once

#include <stdexcept>
#include <string>

namespace atomslit {

// Raised when a request is well-formed but physically unanswerable at the
// requested resolution: truncation too small, nothing left after
// post-selection. The CLI maps this family to exit code 3.
class PhysicsDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TruncationError : public PhysicsDomainError {
 public:
  using PhysicsDomainError::PhysicsDomainError;
};

// Every path amplitude was projected away; there is no pattern to measure.
class EmptyEnsembleError : public PhysicsDomainError {
 public:
  using PhysicsDomainError::PhysicsDomainError;
};

// Two objects that must share a Hilbert space do not.
class SpaceMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace atomslit
