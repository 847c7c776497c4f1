#pragma once

#include <stdexcept>
#include <string>

namespace dcpsf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two series have leading exponents that cannot share an integer grid.
class OffsetMismatch : public Error {
 public:
  using Error::Error;
};

class CoefficientOverflow : public Error {
 public:
  using Error::Error;
};

class ZeroLeadingCoefficient : public Error {
 public:
  using Error::Error;
};

class NegativeExponent : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure exhausted its budget before reaching the tolerance.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// A theta specification violates its invariants or cannot be parsed.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace dcpsf
