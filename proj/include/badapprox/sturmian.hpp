#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "badapprox/cf_core.hpp"
#include "badapprox/quadratic.hpp"

namespace badapprox {

/// s_0 .. s_{len-1} of the characteristic word s_i = floor((i+2) theta) - floor((i+1) theta).
struct SturmianSeq {
  CFSpec theta;
  std::vector<std::uint64_t> words;
  std::size_t length = 0;

  bool operator[](std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  std::size_t count_ones() const;
};

/**
 * Every floor is exact: the golden slope uses integer square roots in Q(sqrt 5),
 * other slopes use a convergent p/q with q > len + 1, for which
 * floor(m p/q) = floor(m theta) whenever m < q.
 */
SturmianSeq generate(const CFSpec& cf, std::size_t length);

/// Growable prefix shared between readers; extension takes the writer lock.
class SturmianWord {
 public:
  explicit SturmianWord(CFSpec theta) : theta_(std::move(theta)) {}

  const CFSpec& theta() const noexcept { return theta_; }
  /// Makes at least `length` bits available.
  void ensure(std::size_t length);
  /// Snapshot of the first `length` bits (extending as needed).
  SturmianSeq prefix(std::size_t length);
  bool bit(std::size_t i);
  std::size_t cached_length() const;

 private:
  CFSpec theta_;
  mutable std::shared_mutex mutex_;
  SturmianSeq cache_;
};

/// First k < max_k with s[r k + a] != s[r k + b]; nullopt when none (agreement >= max_k).
std::optional<std::uint64_t> agreement(const SturmianSeq& s, std::uint64_t r, std::uint64_t a,
                                       std::uint64_t b, std::uint64_t max_k);

struct DiversityWitness {
  std::uint64_t r = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t k_star = 0;
  mpz_class bound;  ///< 2 (B+2)^2 r^2
};

struct DiversityRow {
  std::uint64_t r = 0;
  std::uint64_t max_agreement = 0;
  std::uint64_t arg_a = 0;
  std::uint64_t arg_b = 0;
  bool saturated = false;  ///< some pair agreed past the bound
  mpz_class bound;
  bool pass = false;
};

/// 2 (B+2)^2 r^2.
mpz_class diversity_bound(Quotient bound, std::uint64_t r);

/// Largest agreement over 0 <= a < b < r, for r = 2..r_max, against 2 (B+2)^2 r^2.
std::vector<DiversityRow> diversity_scan(const CFSpec& cf, Quotient bound, std::uint64_t r_max);

// Golden-ratio machinery, exact in Q(sqrt 5).

/// (sqrt(5) - 1) / 2
QuadraticNumber golden_theta();
/// (1 + sqrt(5)) / 2
QuadraticNumber golden_alpha();
/// (1 - sqrt(5)) / 2
QuadraticNumber golden_beta();
/// {m theta} for the golden theta.
QuadraticNumber golden_frac(const mpz_class& m);

mpz_class fibonacci(unsigned n);
mpz_class lucas(unsigned n);

struct FibLucasPair {
  unsigned n = 0;
  mpz_class f;
  mpz_class l;
};

FibLucasPair fib_lucas(unsigned n);

struct FibLucasCheck {
  bool binet_f = false;   ///< F_n = (alpha^n - beta^n) / sqrt 5
  bool binet_l = false;   ///< L_n = alpha^n + beta^n
  bool shift_f = false;   ///< F_n theta = F_{n-1} - beta^n (vacuous at n = 0)
  bool shift_l = false;   ///< L_n theta = L_{n-1} + sqrt(5) beta^n (vacuous at n = 0)
  bool all() const { return binet_f && binet_l && shift_f && shift_l; }
};

FibLucasCheck check_identities(const FibLucasPair& pair);

/// Dense row-major grid.
template <typename Scalar>
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;

  Grid() = default;
  Grid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Scalar& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/**
 * A[i,j] = ({F_4n theta} - 1) i + {L_2n theta} j + {F_{2n-1} theta}
 * B[i,j] = ({F_4n theta} - 1) i + {L_2n theta} j + {L_2n theta}
 * for 0 <= i <= L_{2n+1} - 2, 0 <= j <= F_2n - 1.
 */
struct ABArrays {
  unsigned n = 0;
  Grid<QuadraticNumber> a;
  Grid<QuadraticNumber> b;
  QuadraticNumber d;         ///< step between adjacent columns
  QuadraticNumber d_prime;   ///< step between adjacent rows (upwards)
  QuadraticNumber d_second;  ///< top of a column to the bottom of the next
};

ABArrays ab_arrays(unsigned n);

struct ABArrayCheck {
  bool fractional_parts = false;    ///< {F_{2n-1} theta}, {F_4n theta}, {L_2n theta} closed forms
  bool constant_difference = false; ///< B - A = theta^{2n+1}
  bool ascending = false;           ///< column-major, bottom-up, both arrays
  bool inside_unit_interval = false;
  bool step_formulas = false;       ///< d, d', d''
  bool start_and_end = false;       ///< A start = 2 theta^4n + theta^{6n+1} > 0, B end = 1 - theta^4n < 1
  bool no_wrap_around = false;      ///< entries equal {m theta} for their index m (only when requested)
  bool all(bool with_wrap) const {
    return fractional_parts && constant_difference && ascending && inside_unit_interval &&
           step_formulas && start_and_end && (!with_wrap || no_wrap_around);
  }
};

ABArrayCheck verify_ab_arrays(const ABArrays& arrays, bool check_wrap_around = false);

/// All (i, j) with A[i,j] < 1 - theta < B[i,j].
std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs(const ABArrays& arrays);

struct LowerBoundWitness {
  DiversityWitness witness;
  unsigned n = 0;
  std::uint64_t statement_k = 0;  ///< F_{4n+1} - F_{2n+1} - 1
  std::uint64_t proof_k = 0;      ///< F_{4n+1} - F_{2n} - 1
  bool matches_statement = false;
  bool matches_proof = false;
  std::pair<int, int> disagreement_bits{0, 0};  ///< (s[r k* + a], s[r k* + b])
  std::pair<std::size_t, std::size_t> crossing{0, 0};
  std::uint64_t crossing_k = 0;   ///< k encoded by the crossing position
  bool crossing_brackets = false; ///< A < theta^2 < B at the crossing
  bool crossing_closed_forms = false;
  bool lower_estimate = false;    ///< theta^2 - theta^{4n-2} < A < theta^2
  bool upper_estimate = false;    ///< theta^2 < B < theta^2 + theta^{2n-3} + 3 theta^{4n}
  bool product_identity = false;  ///< (L_{2n+1}-2) F_4n + F_{2n-2} L_2n = L_2n (F_{4n+1} - F_{2n+1} - 1)
};

LowerBoundWitness lower_bound_witness(unsigned n);

struct RatioRow {
  unsigned n = 0;
  mpq_class ratio;  ///< F_{4n+1} / L_{2n}^2
  double deviation_from_limit = 0;
};

struct RatioReport {
  std::vector<RatioRow> rows;
  QuadraticNumber limit;         ///< alpha / sqrt 5 = (5 + sqrt 5) / 10
  QuadraticNumber stated_limit;  ///< (sqrt 5 + 10) / 10
  bool converges_to_limit = false;     ///< last row within 1e-3 of the limit
  bool differs_from_stated = false;    ///< last row farther than 0.1 from the stated value
};

RatioReport ratio_report(unsigned n_from, unsigned n_to);

}  // namespace badapprox
