#pragma once

#include <stdexcept>
#include <string>

namespace hpst {

// Invalid argument or parameter outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Geometry that would produce an infinite coupling (coincident nodes).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request too large for the dense constructions used here.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hpst
