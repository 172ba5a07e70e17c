// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "badapprox/cf_core.hpp"
#include "badapprox/kronecker.hpp"
#include "badapprox/oracle.hpp"
#include "badapprox/sturmian.hpp"
#include "badapprox/three_gap.hpp"

using namespace badapprox;
using oracle::Decimal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

// Closed form evaluated independently in decimal floating point.
Decimal f_reference(long b) {
  if (b % 2 == 0) {
    const Decimal a = b / 2;
    return 1 + (a + 1) * (a + 1) / (2 * sqrt(a * a + 2 * a));
  }
  const Decimal a = (b - 1) / 2;
  return 1 + (a * a + 3 * a + 2) / sqrt(4 * a * a + 12 * a + 5);
}

Outcome f_table() {
  Outcome o;
  const char* named[] = {"1+2/sqrt(5)", "1+2/sqrt(3)", "1+6/sqrt(21)", "1+9/(2*sqrt(8))"};
  const QuadraticNumber one(1L);
  const QuadraticNumber substituted[] = {
      one + QuadraticNumber(2L) / QuadraticNumber::sqrt_of(5),
      one + QuadraticNumber(2L) / QuadraticNumber::sqrt_of(3),
      one + QuadraticNumber(6L) / QuadraticNumber::sqrt_of(21),
      one + QuadraticNumber(9L) / (QuadraticNumber(2L) * QuadraticNumber::sqrt_of(8)),
  };
  for (long b = 1; b <= 4; ++b) {
    if (f_closed(b) != substituted[b - 1]) fail(o, "f(" + std::to_string(b) + ") != " + named[b - 1]);
  }
  for (long b = 1; b <= 10; ++b) {
    const Decimal ref = f_reference(b);
    const Decimal got(f_closed(b).to_decimal(30));
    if (abs(got - ref) / ref > Decimal("5e-11")) fail(o, "f(" + std::to_string(b) + ") disagrees at 10 digits");
  }
  for (long b = 1; b <= 1000; ++b) {
    const QuadraticNumber f = f_closed(b);
    const FBounds fb = f_bounds(b);
    if (!(QuadraticNumber(fb.lower) <= f && f <= fb.upper)) fail(o, "bounds fail at B=" + std::to_string(b));
  }
  if (f_closed(1) != f_bounds(1).upper) fail(o, "upper bound not attained at B=1");
  if (o.pass) o.detail = "f(1..10) match, bounds hold for B<=1000, equality at B=1";
  return o;
}

Outcome three_gap() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<Quotient> bound(1, 10);
  std::uniform_int_distribution<std::uint64_t> size(1, 2000);
  int three = 0;
  for (int i = 0; i < 500; ++i) {
    const Quotient b = bound(rng);
    const CFSpec cf = oracle::random_badly_approximable(rng, b);
    const std::uint64_t n = size(rng);
    const GapSet g = gap_set(cf, n);
    const ThreeGapCheck c = verify_three_gap(g);
    if (!c.all()) fail(o, "three-gap invariant fails at case " + std::to_string(i));
    if (!(QuadraticNumber(g.certified_product().upper()) < f_closed(b))) {
      fail(o, "N*H >= f(B) at case " + std::to_string(i));
    }
    three += g.gaps.size() == 3;
  }
  if (o.pass) o.detail = "500 cases, " + std::to_string(three) + " with three lengths";
  return o;
}

Outcome extremal() {
  Outcome o;
  std::ostringstream d;
  for (Quotient b = 1; b <= 3; ++b) {
    const QuadraticNumber f = f_closed(b);
    mpq_class prev = 0;
    ExtremalWitness w;
    for (unsigned n = 1; n <= 10; ++n) {
      w = extremal_witness(b, n);
      if (!w.below_f) fail(o, "N*H >= f(B) at B=" + std::to_string(b) + " n=" + std::to_string(n));
      if (!(w.certified_product.lower() > prev)) fail(o, "not increasing at B=" + std::to_string(b));
      prev = w.certified_product.upper();
    }
    const QuadraticNumber gap = f - QuadraticNumber(w.certified_product.lower());
    if (!(gap < QuadraticNumber(mpq_class(1, 100)))) fail(o, "gap >= 1e-2 at B=" + std::to_string(b));
    d << "B=" << b << ": f-NH=" << gap.to_decimal(3) << " ";
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome kronecker() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Quotient> bound(1, 10);
  std::uniform_int_distribution<std::uint64_t> size(1, 1000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < 1000; ++i) {
    const Quotient b = bound(rng);
    const CFSpec cf = oracle::random_badly_approximable(rng, b);
    const long d = den(rng);
    mpq_class beta(std::uniform_int_distribution<long>(0, d - 1)(rng), d);
    beta.canonicalize();
    const std::uint64_t n = size(rng);
    const KroneckerSolution s = solve(cf, beta, n);
    const QuadraticNumber limit = f_closed(b) / QuadraticNumber(mpq_class(2 * static_cast<long>(n)));
    if (!(QuadraticNumber(s.certified_error.upper()) <= limit)) fail(o, "bound fails at case " + std::to_string(i));
    if (s.n < 0 || static_cast<std::uint64_t>(s.n) > n || abs(s.p) > static_cast<long>(n)) {
      fail(o, "(n, p) out of range at case " + std::to_string(i));
    }
    const oracle::BruteKronecker ref = oracle::brute_kronecker(oracle::decimal_theta(cf), oracle::to_decimal(beta), n);
    if (ref.n != s.n || mpz_class(ref.p) != s.p) fail(o, "not the global minimizer at case " + std::to_string(i));
  }
  if (o.pass) o.detail = "1000 cases within f(B)/(2N), all global minimizers";
  return o;
}

Outcome tightness() {
  Outcome o;
  const ExtremalWitness w = extremal_witness(1, 10);
  const GapSet g = gap_set(w.theta, w.n);
  // Midpoint of a widest gap, located at the true theta.
  const mpq_class theta = eval_theta(w.theta, report_eps()).center;
  auto value = [&](std::size_t i) {
    return LinearForm{mpz_class(static_cast<long>(g.points[i].n)), g.points[i].floor}.at(theta);
  };
  const LinearForm& widest = g.largest().form;
  std::size_t at = 0;
  while (!(g.points[at + 1].n - g.points[at].n == widest.coeff &&
           g.points[at + 1].floor - g.points[at].floor == widest.offset)) {
    ++at;
  }
  const mpq_class beta = (value(at) + value(at + 1)) / 2;
  const KroneckerSolution s = solve(w.theta, beta, w.n);
  const QuadraticNumber limit = f_closed(1) / QuadraticNumber(mpq_class(2 * static_cast<long>(w.n)));
  const QuadraticNumber ratio = QuadraticNumber(s.certified_error.lower()) / limit;
  if (!(ratio > QuadraticNumber(mpq_class(95, 100)))) fail(o, "error/bound = " + ratio.to_decimal(6));
  if (o.pass) o.detail = "N=" + std::to_string(w.n) + " error/bound=" + ratio.to_decimal(6);
  return o;
}

Outcome diversity() {
  Outcome o;
  std::uint64_t worst = 0;
  for (const DiversityRow& row : diversity_scan(CFSpec::golden(), 1, 30)) {
    const mpz_class limit = mpz_class(18) * row.r * row.r;
    if (!row.pass || row.saturated || mpz_class(static_cast<unsigned long>(row.max_agreement)) > limit) {
      fail(o, "agreement exceeds 18r^2 at r=" + std::to_string(row.r));
    }
    worst = std::max(worst, row.max_agreement);
  }
  if (o.pass) o.detail = "r<=30, largest agreement " + std::to_string(worst);
  return o;
}

Outcome lower_bound() {
  Outcome o;
  std::ostringstream d;
  for (unsigned n : {2u, 3u}) {
    const LowerBoundWitness w = lower_bound_witness(n);
    const std::uint64_t r = lucas(2 * n).get_ui();
    const std::uint64_t a = fibonacci(2 * n - 1).get_ui() - 1;
    if (w.witness.r != r || w.witness.a != a || w.witness.b != r - 1) fail(o, "wrong (r, a, b)");
    // Independent scan over a fresh word.
    const SturmianSeq s = generate(CFSpec::golden(), r * (w.proof_k + 10));
    const auto k = agreement(s, r, a, r - 1, w.proof_k + 5);
    if (!k || *k != w.witness.k_star) fail(o, "scan disagrees with witness at n=" + std::to_string(n));
    if (w.witness.k_star + 2 < w.statement_k) fail(o, "k* below the bound at n=" + std::to_string(n));
    if (w.disagreement_bits != std::pair<int, int>{0, 1}) fail(o, "bit pattern is not (0,1)");
    d << "n=" << n << ": k*=" << w.witness.k_star << " (statement " << w.statement_k << ", proof " << w.proof_k
      << ", matches " << (w.matches_statement ? "statement" : w.matches_proof ? "proof" : "neither") << ") ";
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome identity_suite() {
  Outcome o;
  for (unsigned n = 0; n <= 50; ++n) {
    if (!check_identities(fib_lucas(n)).all()) fail(o, "identity fails at n=" + std::to_string(n));
  }
  for (unsigned n = 2; n <= 5; ++n) {
    const ABArrays arr = ab_arrays(n);
    if (!verify_ab_arrays(arr).all(false)) fail(o, "array invariant fails at n=" + std::to_string(n));
    if (crossing_pairs(arr).size() != 1) fail(o, "crossing pair not unique at n=" + std::to_string(n));
    const LowerBoundWitness w = lower_bound_witness(n);
    if (!(w.crossing_brackets && w.crossing_closed_forms && w.lower_estimate && w.upper_estimate)) {
      fail(o, "crossing estimates fail at n=" + std::to_string(n));
    }
    if (!w.product_identity) fail(o, "product identity fails at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "identities n<=50, arrays n=2..5";
  return o;
}

Outcome ratio() {
  Outcome o;
  const RatioReport r = ratio_report(2, 8);
  if (!r.converges_to_limit) fail(o, "no convergence to alpha/sqrt(5)");
  if (!r.differs_from_stated) fail(o, "not flagged against (sqrt(5)+10)/10");
  if (o.pass) {
    o.detail = "ratio(8)=" + to_decimal(r.rows.back().ratio, 8) + " limit=" + r.limit.to_decimal(8) +
               " stated=" + r.stated_limit.to_decimal(8) + " (differs)";
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t count = 0;
  for (const oracle::OracleReport& r : oracle::run_equivalence(200, 424242)) {
    ++count;
    if (!r.agree) fail(o, r.case_id + ": " + r.candidate + " vs " + r.reference);
  }
  if (o.pass) o.detail = std::to_string(count) + " oracle cases agree";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "f(B) table and bounds", 1, f_table},
      {2, "three-gap structure", 60, three_gap},
      {3, "extremal convergence", 10, extremal},
      {4, "Kronecker bound", 60, kronecker},
      {5, "Kronecker tightness", 5, tightness},
      {6, "diversity upper bound", 60, diversity},
      {7, "lower-bound witness", 30, lower_bound},
      {8, "exact identity suite", 30, identity_suite},
      {9, "ratio report", 1, ratio},
      {10, "oracle equivalence", 120, oracle_equivalence},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_seconds) fail(o, "runtime over limit");
    failures += !o.pass;
    std::printf("%s criterion %d: %s (%.2fs, limit %.0fs) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                secs, c.limit_seconds, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
