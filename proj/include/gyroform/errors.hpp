#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gyroform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A frame or group element failed its orthonormality / determinant checks.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. rho <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (non-unit vector, bad sign, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Two particles closer than the collision threshold.
class CollisionError : public Error {
 public:
  CollisionError(std::size_t first, std::size_t second, double distance);

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  double distance() const { return distance_; }

 private:
  std::size_t first_;
  std::size_t second_;
  double distance_;
};

/// A feedback law produced NaN/inf, or the state went non-finite.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::size_t tick, const std::string& what);
  std::size_t tick() const { return tick_; }

 private:
  std::size_t tick_;
};

/// Configuration text could not be parsed or violates a law assumption.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace gyroform
