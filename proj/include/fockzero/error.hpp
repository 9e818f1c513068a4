#pragma once

#include <stdexcept>
#include <string>

namespace fockzero {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction-time invariant of a value type was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Adaptive truncation exhausted its doubling budget above tolerance.
class TruncationNotConverged : public Error {
 public:
  TruncationNotConverged(const std::string& what, double last_change)
      : Error(what), last_change_(last_change) {}
  double last_change() const noexcept { return last_change_; }

 private:
  double last_change_;
};

/// Evaluation point sits on (or within the exclusion radius of) a pole.
class DomainPole : public Error {
 public:
  using Error::Error;
};

/// A power-law fit needs more dyadic annuli than the trace provides.
class InsufficientAnnuli : public Error {
 public:
  using Error::Error;
};

/// A density extrapolation needs at least three radii.
class InsufficientRadii : public Error {
 public:
  using Error::Error;
};

}  // namespace fockzero
