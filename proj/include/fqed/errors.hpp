#pragma once

#include <stdexcept>
#include <string>

namespace fqed {

/// Bad input: off-shell momenta, broken conservation, out-of-range indices.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Quadrature or integrator failure.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An intermediate propagator (or Coulomb kernel) landed on its pole.
class PoleError : public NumericError {
public:
  using NumericError::NumericError;
};

/// Unreadable or malformed input files.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace fqed
