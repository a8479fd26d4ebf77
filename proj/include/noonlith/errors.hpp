#pragma once

#include <stdexcept>
#include <string>

namespace noonlith {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Slit amplitudes fall outside the exchange-symmetric subspace.
class SymmetryError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Quadrature or refinement could not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A memory or work budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// File-system failure while writing or reading results.
class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace noonlith
