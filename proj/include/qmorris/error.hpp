#pragma once

#include <stdexcept>
#include <string>

namespace qmorris {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A denominator survived cancellation where a Laurent polynomial was required.
class NotPolynomial : public Error {
 public:
  using Error::Error;
};

/// Two denominator factors share the same pole.
class DuplicateFactor : public Error {
 public:
  using Error::Error;
};

/// Partial-fraction step asked to handle a polynomial part of positive degree.
class PositiveDegree : public Error {
 public:
  using Error::Error;
};

/// Residue recursion reached a node that is neither zero, proper, nor the
/// documented exceptional chain.
class ImproperBranch : public Error {
 public:
  using Error::Error;
};

}  // namespace qmorris
