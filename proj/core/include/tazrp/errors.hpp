#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tazrp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in rings (or spaces) of different dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Exact division by a rate variable was requested on a polynomial that has
/// a monomial without that variable.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed. `position()` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Invalid sector description (non-basic, bad chain length, ...).
class SectorError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data is incomplete or inconsistent.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The kernel solver found a kernel whose dimension is not one.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tazrp
