#pragma once

#include <stdexcept>
#include <string>

namespace dispflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point left the sphere, or a renormalization was asked of the zero vector.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid argument combination (wrong radius, zero time gap, CFL violation...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The curve is too coarse for the discrete parallel transport.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real (or small) came out otherwise.
class NumericsError : public Error {
 public:
  using Error::Error;
};

/// A file could not be written or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or runaway derivatives during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time, double max_norm)
      : Error(what + " (t=" + std::to_string(time) +
              ", max-norm=" + std::to_string(max_norm) + ")"),
        time_(time),
        max_norm_(max_norm) {}

  double time() const { return time_; }
  double max_norm() const { return max_norm_; }

 private:
  double time_;
  double max_norm_;
};

}  // namespace dispflow
