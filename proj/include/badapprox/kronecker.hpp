#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "badapprox/cf_core.hpp"
#include "badapprox/quadratic.hpp"
#include "badapprox/three_gap.hpp"

namespace badapprox {

/// Integers (n, p) with |n theta - p - beta| <= f(B) / (2N), 0 <= n <= N.
struct KroneckerSolution {
  std::int64_t n = 0;
  mpz_class p;
  mpq_class achieved_error;  ///< |n theta - p - beta|, within report_eps()
  CertifiedValue certified_error;
  QuadraticNumber bound;     ///< f(B) / (2N)
  mpz_class legacy_bound;    ///< (B+2) N^2
  bool within_bound = false; ///< certified error <= bound
};

/**
 * Nearest endpoint of the gap containing beta among the sorted points
 * 0, {theta}, ..., {N theta}, 1. The endpoint 1 maps to (n, p) = (0, -1);
 * a beta equidistant from both endpoints takes the left one.
 *
 * Irrational theta: the surrogate is deepened until the bracket and the
 * nearest-endpoint decision are certified for the true theta.
 */
KroneckerSolution solve(const CFSpec& cf, const mpq_class& beta, std::uint64_t n);

/// Same, reusing a precomputed gap set (no certification deepening).
KroneckerSolution solve(const GapSet& gaps, Quotient bound, const mpq_class& beta);

/// (B+2) N^2, the older index bound for accuracy 1/N.
mpz_class legacy_bound(Quotient bound, std::uint64_t n);

}  // namespace badapprox
