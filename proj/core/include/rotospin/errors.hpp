#pragma once

#include <stdexcept>
#include <string>

namespace rotospin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model or request violates its preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A response denominator vanished with a non-zero drive on that helicity.
/// Happens for a lossless oscillator (damping = radiative time = 0) exactly on
/// a resonance ellipse, and for any damping at w -+ Omega = 0 with
/// |Omega| = w0, where the co-rotating field is static and the effective
/// stiffness w0^2 - Omega^2 is zero.
class SingularResonance : public Error {
 public:
  using Error::Error;
};

/// Spin-up cannot start: the torque at the initial rotation does not push
/// toward the target.
class UnreachableTarget : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text. `line()` is 1-based, 0 when not tied to a
/// specific line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace rotospin
