#pragma once

#include <stdexcept>
#include <string>

namespace wtk {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (poles, empty regions).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole of a meromorphic function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series, continued fraction or quadrature failed to reach its target.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Artin symbol requested at a prime that ramifies.
class RamifiedPrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (bad character assignment, non-subgroup, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A zero inventory could not be certified by the argument principle.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, long located, long counted)
      : Error(what + " (located " + std::to_string(located) + ", argument principle " +
              std::to_string(counted) + ")"),
        located_(located),
        counted_(counted) {}
  long located() const noexcept { return located_; }
  long counted() const noexcept { return counted_; }

 private:
  long located_;
  long counted_;
};

/// Two routes to the same exact identity disagreed beyond tolerance.
class IdentityViolation : public Error {
 public:
  IdentityViolation(const std::string& what, double discrepancy)
      : Error(what + " (discrepancy " + std::to_string(discrepancy) + ")"),
        discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

/// A witness search cannot succeed (e.g. principal character).
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

/// A witness search ran past its cap.
class CapExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace wtk
