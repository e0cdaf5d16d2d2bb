#pragma once

#include <stdexcept>
#include <string>

namespace spinchain {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range model parameters, site indices or grid specifications.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. h(x) for x > 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a precondition on matrix shape or symmetry.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A density matrix or state vector is not a valid quantum state.
class StateValidityError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure or a numerically impossible intermediate.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A projective measurement outcome with zero probability was requested.
class MeasurementOutcomeError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinchain
