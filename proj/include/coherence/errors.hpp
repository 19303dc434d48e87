#pragma once

#include <stdexcept>
#include <string>

namespace coherence {

/// Base class for every error raised by the library.
class CoherenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroVector : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class DimensionMismatch : public CoherenceError {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : CoherenceError("dimension mismatch: " + std::to_string(lhs) + " vs " +
                       std::to_string(rhs)) {}
};

class InvalidState : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class NotHermitian : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class NoConvergence : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class DomainError : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

/// A computed quantity that is provably non-negative came out clearly negative.
class ConsistencyError : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class WrongPairClass : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class DegeneratePair : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

class BadSplit : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

}  // namespace coherence
