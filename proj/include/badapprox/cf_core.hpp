#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "badapprox/quadratic.hpp"

namespace badapprox {

using Quotient = std::int64_t;

/**
 * A real number theta = [a0; a1, a2, ...] given by its partial quotients:
 * a finite prefix followed by an optional periodic tail. An empty period means
 * theta is rational and the expansion stops after the prefix.
 *
 * Construction normalizes: finite expansions never end in 1, periods are
 * primitive, and the prefix never ends with the period's last quotient.
 * Two specs are equal iff they denote the same number.
 */
class CFSpec {
 public:
  CFSpec() = default;
  CFSpec(Quotient a0, std::vector<Quotient> prefix, std::vector<Quotient> period = {});

  /// [0; 1, 1, 1, ...] = (sqrt(5) - 1) / 2.
  static CFSpec golden();
  /// [0; 2, 2, 2, ...] = sqrt(2) - 1.
  static CFSpec sqrt2();
  /// [0; B, 1, B, 1, ...], the minimum of S_B.
  static CFSpec extremal(Quotient bound);

  Quotient a0() const noexcept { return a0_; }
  const std::vector<Quotient>& prefix() const noexcept { return prefix_; }
  const std::vector<Quotient>& period() const noexcept { return period_; }

  bool is_rational() const noexcept { return period_.empty(); }
  /// Number of quotients a_0..a_m for rational theta, nullopt otherwise.
  std::optional<std::size_t> length() const;
  /// a_i; i = 0 is a0. Throws DomainError past the end of a rational expansion.
  Quotient quotient(std::size_t i) const;
  /// max a_i over i >= 1 (0 for an integer).
  Quotient bound() const;
  bool in_sb(Quotient b) const { return bound() <= b; }

  /// [0; a_k, a_{k+1}, ...]; k == length() of a rational spec yields 0.
  CFSpec tail(std::size_t k) const;

  /// Exact value for periodic expansions, rational value for finite ones.
  QuadraticNumber exact_value() const;

  friend bool operator==(const CFSpec&, const CFSpec&) = default;

 private:
  Quotient a0_ = 0;
  std::vector<Quotient> prefix_;
  std::vector<Quotient> period_;
};

struct Convergent {
  std::size_t k = 0;
  mpz_class p;
  mpz_class q;
};

struct ConvergentList {
  std::vector<Convergent> values;
  /// Set when a rational expansion ended before the requested count.
  bool truncated = false;
};

/// A real known to lie in [center - radius, center + radius].
struct CertifiedValue {
  mpq_class center;
  mpq_class radius;

  mpq_class lower() const { return center - radius; }
  mpq_class upper() const { return center + radius; }
  bool contains(const mpq_class& x) const { return lower() <= x && x <= upper(); }
  /// True when the two enclosures intersect.
  bool overlaps(const CertifiedValue& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
  }

  friend CertifiedValue operator+(const CertifiedValue& x, const CertifiedValue& y);
  friend CertifiedValue operator-(const CertifiedValue& x, const CertifiedValue& y);
  friend CertifiedValue operator*(const CertifiedValue& x, const CertifiedValue& y);
  /// Enclosure of 1/x; x must not contain 0.
  CertifiedValue reciprocal() const;
};

/// coeff * theta - offset, the shape of every {n theta} difference.
struct LinearForm {
  mpz_class coeff;
  mpz_class offset;

  mpq_class at(const mpq_class& theta) const { return coeff * theta - offset; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/**
 * Rational stand-in p_K/q_K for theta, plus the error bound
 * |theta - p_K/q_K| <= 1/(q_K q_{K+1}) (zero when exact).
 */
struct Surrogate {
  std::size_t depth = 0;
  mpz_class p;
  mpz_class q;
  bool exact = false;
  mpq_class theta_radius;

  mpq_class value() const { return mpq_class(p, q); }
  /// Bound on |n theta - n theta*| for |n| <= n_max.
  mpq_class radius_for(const mpz_class& n_max) const { return theta_radius * n_max; }
};

ConvergentList convergents(const CFSpec& cf, std::size_t count);

/// Surrogate at a fixed depth (clamped to the last convergent of a rational spec).
Surrogate surrogate_at(const CFSpec& cf, std::size_t depth);

/// Shallowest surrogate whose theta radius is <= eps.
Surrogate surrogate_within(const CFSpec& cf, const mpq_class& eps);

CertifiedValue eval_theta(const CFSpec& cf, const mpq_class& eps);

/// ||x||, the distance to the nearest integer.
mpq_class dist_to_nearest_int(const mpq_class& x);

/// Certified ||n theta||.
CertifiedValue dist_to_int(const CFSpec& cf, const mpz_class& n, const mpq_class& eps);

struct TailReversal {
  CertifiedValue theta_k;
  /// q_{k-1}/q_k = [0; a_k, ..., a_1].
  mpq_class phi_k;
};

TailReversal tail_and_reversal(const CFSpec& cf, std::size_t k, const mpq_class& eps);

struct SbExtrema {
  QuadraticNumber min;  ///< [0; B, 1, B, 1, ...]
  QuadraticNumber max;  ///< [B; 1, B, 1, ...]
};

SbExtrema sb_extrema(Quotient bound);

}  // namespace badapprox
