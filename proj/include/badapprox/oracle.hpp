#pragma once

// Brute-force references. Everything here runs in fixed 50-digit decimal
// floating point and never touches the exact rational pathway.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gmpxx.h>

#include "badapprox/cf_core.hpp"

namespace badapprox::oracle {

using Decimal = boost::multiprecision::cpp_dec_float_50;

/// theta from its quotients by backward evaluation of a depth-`depth` truncation.
Decimal decimal_theta(const CFSpec& cf, unsigned depth = 200);
Decimal to_decimal(const mpq_class& x);

struct BruteGap {
  Decimal length;
  std::size_t multiplicity = 0;
};

/// Distinct gaps of 0, {theta}, ..., {N theta}, 1 by naive sorting; lengths
/// closer than `merge_tol` are one length.
std::vector<BruteGap> brute_gap_set(const Decimal& theta, std::uint64_t n,
                                    const Decimal& merge_tol = Decimal("1e-40"));

struct BruteKronecker {
  std::int64_t n = 0;
  std::int64_t p = 0;
  Decimal error;
};

/// Minimizer of |n theta - p - beta| over 0 <= n <= N and all integers p.
BruteKronecker brute_kronecker(const Decimal& theta, const Decimal& beta, std::uint64_t n);

/// s_i = floor((i+2) theta) - floor((i+1) theta), in decimal arithmetic.
std::vector<std::uint8_t> brute_sturmian_bits(const Decimal& theta, std::size_t length);

/// Linear scan for the first k < max_k with bits[r k + a] != bits[r k + b].
std::optional<std::uint64_t> brute_agreement(std::span<const std::uint8_t> bits, std::uint64_t r,
                                             std::uint64_t a, std::uint64_t b, std::uint64_t max_k);

struct OracleReport {
  std::string case_id;
  std::string reference;
  std::string candidate;
  bool agree = false;
  std::string max_deviation;
};

/// Random theta = [0; prefix, period...] with quotients in 1..B.
CFSpec random_badly_approximable(std::mt19937_64& rng, Quotient bound);

OracleReport check_gap_set(const CFSpec& cf, std::uint64_t n);
OracleReport check_kronecker(const CFSpec& cf, const mpq_class& beta, std::uint64_t n);
OracleReport check_agreement(const CFSpec& cf, std::uint64_t r, std::uint64_t a, std::uint64_t b);

/// `cases` randomized checks of each kind.
std::vector<OracleReport> run_equivalence(std::size_t cases, std::uint64_t seed);

}  // namespace badapprox::oracle
