#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "badapprox/cf_core.hpp"
#include "badapprox/quadratic.hpp"

namespace badapprox {

LinearForm operator+(const LinearForm& x, const LinearForm& y);
LinearForm operator-(const LinearForm& x, const LinearForm& y);
LinearForm operator*(const mpz_class& k, const LinearForm& x);

/// form(theta) enclosed within `eps` (exact when theta is rational).
CertifiedValue certify(const LinearForm& form, const CFSpec& cf, const mpq_class& eps);

/// Default enclosure width for reported values.
const mpq_class& report_eps();

/// |q_k theta - p_k| as a linear form; equals ||q_k theta|| for k >= 1.
LinearForm convergent_distance(const Convergent& c);

/**
 * Surrogate used for all comparisons among {n theta}, n <= N.
 *
 * Irrational theta: the shallowest p_K/q_K with q_K q_{K+1} > 16 (B+2) N^2,
 * then `extra_depth` further convergents. Every point moves by less than a
 * sixteenth of the smallest gap, so the sorted order is the true one.
 * Rational theta: its own last convergent; throws CoincidentPointsError unless
 * N < q_last.
 */
Surrogate gap_surrogate(const CFSpec& cf, std::uint64_t n, std::size_t extra_depth = 0);

/// {n theta*} = residue / q, with n theta* = floor + residue / q.
struct GapPoint {
  std::int64_t n = 0;
  mpz_class floor;
  mpz_class residue;
};

struct GapLength {
  mpq_class length;  ///< under the surrogate
  LinearForm form;   ///< true length is form(theta)
  std::size_t multiplicity = 0;
};

/// The N+2 sorted points 0, {theta}, ..., {N theta}, 1 and their gaps.
struct GapSet {
  CFSpec theta;
  std::uint64_t n = 0;
  Surrogate surrogate;
  std::vector<GapPoint> points;
  std::vector<GapLength> gaps;  ///< distinct lengths, ascending

  mpq_class point(std::size_t i) const { return mpq_class(points[i].residue, surrogate.q); }
  const GapLength& largest() const { return gaps.back(); }
  mpq_class product_nh() const { return largest().length * mpz_class(n); }
  /// Bound on |length(theta) - length(theta*)| for every gap.
  mpq_class radius() const { return surrogate.radius_for(mpz_class(n)); }
  /// N * H(theta, N) at the true theta, within `eps`.
  CertifiedValue certified_product(const mpq_class& eps = report_eps()) const;
};

GapSet gap_set(const CFSpec& cf, std::uint64_t n, std::size_t extra_depth = 0);

struct ThreeGapCheck {
  bool point_count = false;
  bool strictly_increasing = false;
  bool lengths_sum_to_one = false;
  bool two_or_three = false;  ///< one length is also allowed for rational theta at N = q - 1
  bool largest_is_sum = false;  ///< vacuous when there are two lengths

  bool all() const {
    return point_count && strictly_increasing && lengths_sum_to_one && two_or_three && largest_is_sum;
  }
};

ThreeGapCheck verify_three_gap(const GapSet& gaps);

/**
 * Gap lengths and multiplicities without sorting. With u the index of the
 * smallest and v of the largest {n theta}, 1 <= n <= N, the point after {j theta}
 * is {(j+u) theta} when j + u <= N, else {(j-v) theta} when j >= v, else
 * {(j+u-v) theta}. Linear time in N, constant memory.
 */
struct GapStructure {
  CFSpec theta;
  std::uint64_t n = 0;
  Surrogate surrogate;
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::vector<GapLength> gaps;  ///< distinct lengths, ascending

  const GapLength& largest() const { return gaps.back(); }
  CertifiedValue certified_product(const mpq_class& eps = report_eps()) const;
};

GapStructure gap_structure(const CFSpec& cf, std::uint64_t n);

enum class Bracket {
  kFirst,   ///< q_k <= N < q_k + q_{k-1}
  kSecond,  ///< l q_k + q_{k-1} <= N < (l+1) q_k + q_{k-1}, 0 < l < a_{k+1}
};

std::string to_string(Bracket bracket);

struct RegimeTag {
  std::size_t k = 0;
  std::int64_t l = 0;
  Bracket bracket = Bracket::kFirst;
  mpz_class q_k;
  mpz_class q_km1;
  std::vector<LinearForm> predicted;
};

RegimeTag classify_regime(const CFSpec& cf, std::uint64_t n);

/// Every observed gap length is one of the predicted lengths.
bool gaps_match_regime(const GapSet& gaps, const RegimeTag& tag);

/// The optimal constant: sup of N * H(theta, N) over theta in S_B and N >= 1.
QuadraticNumber f_closed(Quotient bound);
/// e.g. "1+2/sqrt(3)" for B = 2.
std::string f_closed_symbolic(Quotient bound);

struct FBounds {
  mpq_class lower;        ///< B/4
  QuadraticNumber upper;  ///< (1 + sqrt(4/5)) B
};

FBounds f_bounds(Quotient bound);

struct ExtremalWitness {
  Quotient bound = 0;
  unsigned index = 0;
  CFSpec theta;
  std::uint64_t n = 0;
  LinearForm predicted_form;
  CertifiedValue predicted_gap;
  bool predicted_in_gap_set = false;
  bool predicted_is_largest = false;
  mpq_class largest_gap;  ///< H under the surrogate
  mpq_class product;      ///< N * H under the surrogate
  CertifiedValue certified_product;
  bool below_f = false;  ///< certified N * H < f(B)
};

/// theta = [0; B, 1, B, 1, ...] and N = q_{2n-1} + floor((B+2)/2) q_{2n} - 2.
ExtremalWitness extremal_witness(Quotient bound, unsigned index);

}  // namespace badapprox
