#pragma once

#include <stdexcept>
#include <string>

namespace qil {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value violates one of its type's invariants (norm, hermiticity, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Collapse onto an outcome of zero probability: the 0/0 cross projection.
class UndefinedProjection : public Error {
 public:
  using Error::Error;
};

/// Measurement residue requested for a vanishing amplitude.
class UndefinedResidue : public Error {
 public:
  using Error::Error;
};

class NotNeqrState : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class UndefinedPercentage : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qil
