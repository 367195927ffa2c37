#pragma once

#include <stdexcept>
#include <string>

namespace pfcme {

/// Argument outside the domain of an operation (m < 3, t < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested member does not fit the working precision.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite intermediate or quadrature that failed its self-check.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfcme
