#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace badapprox {

/// Input outside an operation's domain (bad quotients, k = 0, beta outside [0,1), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rational theta with N at or beyond its last denominator: two points coincide.
class CoincidentPointsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Structurally malformed input document (as opposed to out-of-domain values).
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A bit sequence is shorter than a scan requires.
class LengthError : public std::length_error {
 public:
  LengthError(std::size_t required, std::size_t available)
      : std::length_error("sequence too short: need " + std::to_string(required) +
                          " bits, have " + std::to_string(available)),
        required_(required) {}

  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

/// A proved bound or structural invariant failed on concrete data.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace badapprox
