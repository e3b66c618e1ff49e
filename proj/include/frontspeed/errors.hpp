#ifndef FRONTSPEED_ERRORS_HPP_
#define FRONTSPEED_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace frontspeed {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the inputs of a closed-form routine was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation on the line W = c of the undesingularized traveling-wave field.
class SingularInputError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An integration did not reach its target (step underflow, box exit, ...).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Bracketed root search on an interval without a sign change.
class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

// Bad command-line input; maps to exit code 64.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace frontspeed

#endif  // FRONTSPEED_ERRORS_HPP_
