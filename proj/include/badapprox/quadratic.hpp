#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace badapprox {

/// Splits n > 0 as n = c^2 * d with d square-free. Returns {c, d}.
std::pair<std::int64_t, std::int64_t> square_free_split(std::int64_t n);

/**
 * Exact element a + b*sqrt(d) of a real quadratic field.
 *
 * The radicand is kept square-free; numbers with b == 0 are stored with d == 1
 * and mix freely with any field. Arithmetic between two irrational numbers over
 * different radicands throws DomainError. Ordering is decided by integer
 * arithmetic only and works across different radicands.
 */
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(mpq_class value) : a_(std::move(value)) { a_.canonicalize(); }  // NOLINT
  QuadraticNumber(mpq_class a, mpq_class b, std::int64_t d);

  /// sqrt(n) for a positive integer n.
  static QuadraticNumber sqrt_of(std::int64_t n);

  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& surd_coefficient() const noexcept { return b_; }
  std::int64_t radicand() const noexcept { return d_; }
  bool is_rational() const noexcept { return b_ == 0; }

  QuadraticNumber conjugate() const;
  /// a^2 - b^2 d, the field norm.
  mpq_class norm() const;
  int sign() const;

  QuadraticNumber& operator+=(const QuadraticNumber& rhs);
  QuadraticNumber& operator-=(const QuadraticNumber& rhs);
  QuadraticNumber& operator*=(const QuadraticNumber& rhs);
  QuadraticNumber& operator/=(const QuadraticNumber& rhs);

  friend QuadraticNumber operator+(QuadraticNumber lhs, const QuadraticNumber& rhs) { return lhs += rhs; }
  friend QuadraticNumber operator-(QuadraticNumber lhs, const QuadraticNumber& rhs) { return lhs -= rhs; }
  friend QuadraticNumber operator*(QuadraticNumber lhs, const QuadraticNumber& rhs) { return lhs *= rhs; }
  friend QuadraticNumber operator/(QuadraticNumber lhs, const QuadraticNumber& rhs) { return lhs /= rhs; }
  QuadraticNumber operator-() const;

  QuadraticNumber pow(unsigned exponent) const;

  /// Largest integer <= value, exact.
  mpz_class floor() const;

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);

  double to_double() const;
  /// Decimal rendering with `digits` significant digits.
  std::string to_decimal(int digits = 10) const;
  /// Exact symbolic rendering such as "(1/2)+(1/2)*sqrt(5)".
  std::string to_string() const;

 private:
  void unify(const QuadraticNumber& other);

  mpq_class a_{0};
  mpq_class b_{0};
  std::int64_t d_ = 1;
};

/// Sign of x - y; works for any two radicands.
int compare(const QuadraticNumber& x, const QuadraticNumber& y);

/// Decimal rendering of an exact rational with `digits` significant digits.
std::string to_decimal(const mpq_class& value, int digits = 10);

}  // namespace badapprox
