#pragma once

#include <stdexcept>
#include <string>

namespace dfree {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds an enumeration or search cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A structured object (scenario, poset) violates one of its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dfree
