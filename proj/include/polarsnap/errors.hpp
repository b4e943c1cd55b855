#pragma once

#include <stdexcept>
#include <string>

namespace polarsnap {

// Argument outside the mathematical domain of an operation (bad SatId,
// zero vector, non-positive interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The constellation is valid but the line-of-satellites model cannot
// represent it (odd plane count, polar border never crossed).
class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Horizontal links are visible at every latitude, so no survival
// latitude exists.
class InfeasibleGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inputs that are individually valid but inconsistent with each other.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polarsnap
