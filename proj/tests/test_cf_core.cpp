#include <gtest/gtest.h>

#include <random>

#include "badapprox/cf_core.hpp"
#include "badapprox/errors.hpp"
#include "badapprox/oracle.hpp"
#include "test_util.hpp"

using namespace badapprox;
using testutil::dec;
using testutil::pow10_inv;

namespace {

std::vector<CFSpec> corpus() {
  return {CFSpec::golden(),           CFSpec::sqrt2(),       CFSpec::extremal(1),
          CFSpec::extremal(2),        CFSpec::extremal(5),   CFSpec{0, {}, {3}},
          CFSpec{0, {4, 1, 7}, {2, 5}}, CFSpec{0, {}, {1, 2, 3}}};
}

}  // namespace

TEST(CFSpec, CanonicalizesTrailingOne) {
  EXPECT_EQ(CFSpec(0, {2, 1}), CFSpec(0, {3}));
  EXPECT_EQ(CFSpec(0, {1}), CFSpec(1, {}));
}

TEST(CFSpec, CanonicalizesPeriod) {
  EXPECT_EQ(CFSpec(0, {}, {2, 2, 2}), CFSpec::sqrt2());
  EXPECT_EQ(CFSpec(0, {}, {1, 2, 1, 2}), CFSpec(0, {}, {1, 2}));
  // [0; 1, 1, 1, ...] written with a redundant prefix
  EXPECT_EQ(CFSpec(0, {1, 1}, {1}), CFSpec::golden());
  EXPECT_EQ(CFSpec(0, {2}, {1, 2}), CFSpec(0, {}, {2, 1}));
}

TEST(CFSpec, RejectsNonPositiveQuotients) {
  EXPECT_THROW(CFSpec(0, {0}), DomainError);
  EXPECT_THROW(CFSpec(0, {}, {2, -1}), DomainError);
}

TEST(CFSpec, Quotients) {
  const CFSpec cf(1, {4}, {2, 3});
  EXPECT_EQ(cf.quotient(0), 1);
  EXPECT_EQ(cf.quotient(1), 4);
  EXPECT_EQ(cf.quotient(2), 2);
  EXPECT_EQ(cf.quotient(3), 3);
  EXPECT_EQ(cf.quotient(4), 2);
  EXPECT_EQ(cf.bound(), 4);
  EXPECT_TRUE(cf.in_sb(4));
  EXPECT_FALSE(cf.in_sb(3));
  EXPECT_FALSE(cf.length());
  EXPECT_EQ(CFSpec(0, {2}).length(), 2u);
  EXPECT_THROW(CFSpec(0, {2}).quotient(2), DomainError);
}

TEST(CFSpec, Tail) {
  EXPECT_EQ(CFSpec::extremal(3).tail(2), CFSpec(0, {}, {1, 3}));
  EXPECT_EQ(CFSpec(0, {5, 2}).tail(2), CFSpec(0, {2}));
  EXPECT_EQ(CFSpec(0, {5, 2}).tail(3), CFSpec{});
  EXPECT_THROW(CFSpec::golden().tail(0), DomainError);
}

TEST(CFSpec, ExactValue) {
  EXPECT_EQ(CFSpec::golden().exact_value(),
            (QuadraticNumber::sqrt_of(5) - QuadraticNumber(1L)) / QuadraticNumber(2L));
  EXPECT_EQ(CFSpec::sqrt2().exact_value(), QuadraticNumber::sqrt_of(2) - QuadraticNumber(1L));
  EXPECT_EQ(CFSpec(0, {2, 3}).exact_value(), QuadraticNumber(mpq_class(3, 7)));
  const CFSpec mixed(0, {4, 1, 7}, {2, 5});
  const CertifiedValue t = eval_theta(mixed, pow10_inv(40));
  EXPECT_LE(abs(dec(mixed.exact_value().to_decimal(30)) - t.center), pow10_inv(28));
}

TEST(Convergents, GoldenDenominatorsAreFibonacci) {
  const ConvergentList c = convergents(CFSpec::golden(), 6);
  ASSERT_EQ(c.values.size(), 6u);
  const long expect[] = {1, 1, 2, 3, 5, 8};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(c.values[i].q, expect[i]);
}

TEST(Convergents, SqrtTwo) {
  const ConvergentList c = convergents(CFSpec::sqrt2(), 4);
  const long p[] = {0, 1, 2, 5};
  const long q[] = {1, 2, 5, 12};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(c.values[i].p, p[i]);
    EXPECT_EQ(c.values[i].q, q[i]);
  }
}

TEST(Convergents, RationalZero) {
  const ConvergentList c = convergents(CFSpec{}, 5);
  ASSERT_EQ(c.values.size(), 1u);
  EXPECT_EQ(c.values[0].p, 0);
  EXPECT_EQ(c.values[0].q, 1);
  EXPECT_TRUE(c.truncated);
}

TEST(Convergents, RecurrenceAndGcd) {
  for (const CFSpec& cf : corpus()) {
    const ConvergentList c = convergents(cf, 40);
    for (std::size_t k = 0; k < c.values.size(); ++k) {
      EXPECT_EQ(gcd(c.values[k].p, c.values[k].q), 1);
      if (k >= 2) {
        EXPECT_EQ(c.values[k].q, cf.quotient(k) * c.values[k - 1].q + c.values[k - 2].q);
        EXPECT_EQ(c.values[k].p, cf.quotient(k) * c.values[k - 1].p + c.values[k - 2].p);
      }
      if (k >= 2) EXPECT_GT(c.values[k].q, c.values[k - 1].q);
      if (k >= 1) {
        // p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1}
        const mpz_class det = c.values[k].p * c.values[k - 1].q - c.values[k - 1].p * c.values[k].q;
        EXPECT_EQ(det, k % 2 == 1 ? 1 : -1);
      }
    }
  }
}

TEST(EvalTheta, Examples) {
  const mpq_class eps = pow10_inv(6);
  EXPECT_LE(abs(eval_theta(CFSpec::golden(), eps).center - dec("0.6180339887")), eps);
  EXPECT_LE(abs(eval_theta(CFSpec::sqrt2(), eps).center - dec("0.4142135624")), eps);
  const CertifiedValue half = eval_theta(CFSpec(0, {2}), eps);
  EXPECT_EQ(half.center, mpq_class(1, 2));
  EXPECT_EQ(half.radius, 0);
}

TEST(EvalTheta, RadiusBelowEpsAndContainsTruth) {
  for (const CFSpec& cf : corpus()) {
    const QuadraticNumber truth = cf.exact_value();
    for (int e : {3, 10, 30, 60}) {
      const CertifiedValue t = eval_theta(cf, pow10_inv(e));
      EXPECT_LE(t.radius, pow10_inv(e));
      EXPECT_LE(QuadraticNumber(t.lower()), truth);
      EXPECT_GE(QuadraticNumber(t.upper()), truth);
    }
  }
}

TEST(EvalTheta, RejectsNonPositiveEps) {
  EXPECT_THROW(eval_theta(CFSpec::golden(), mpq_class(0)), DomainError);
}

TEST(DistToInt, GoldenExamples) {
  const mpq_class eps = pow10_inv(12);
  EXPECT_LE(abs(dist_to_int(CFSpec::golden(), 3, eps).center - dec("0.145898")), mpq_class(1, 1000000));
  EXPECT_LE(abs(dist_to_int(CFSpec::golden(), 5, eps).center - dec("0.090170")), mpq_class(1, 1000000));
  EXPECT_EQ(dist_to_nearest_int(mpq_class(7, 4)), mpq_class(1, 4));
  EXPECT_EQ(dist_to_nearest_int(mpq_class(-7, 4)), mpq_class(1, 4));
  EXPECT_EQ(dist_to_nearest_int(mpq_class(1, 2)), mpq_class(1, 2));
}

TEST(DistToInt, NearIntegerStaysCertified) {
  // q_20 theta is extremely close to p_20
  const ConvergentList c = convergents(CFSpec::golden(), 21);
  const CertifiedValue d = dist_to_int(CFSpec::golden(), c.values[20].q, pow10_inv(30));
  EXPECT_GE(d.lower(), -pow10_inv(30));
  EXPECT_LT(d.center, mpq_class(1, 10000));
  EXPECT_LE(d.radius, pow10_inv(30));
}

TEST(TailReversal, Examples) {
  EXPECT_EQ(tail_and_reversal(CFSpec::golden(), 3, pow10_inv(10)).phi_k, mpq_class(2, 3));
  EXPECT_EQ(tail_and_reversal(CFSpec(0, {}, {2, 1}), 2, pow10_inv(10)).phi_k, mpq_class(2, 3));
  EXPECT_THROW(tail_and_reversal(CFSpec::golden(), 0, pow10_inv(10)), DomainError);
}

TEST(TailReversal, PeriodicTails) {
  const CFSpec cf(0, {}, {3, 1, 2});
  const auto t1 = tail_and_reversal(cf, 1, pow10_inv(30)).theta_k;
  const auto t4 = tail_and_reversal(cf, 4, pow10_inv(30)).theta_k;
  EXPECT_TRUE(t1.overlaps(t4));
  EXPECT_LE(abs(t1.center - t4.center), pow10_inv(29));
}

// q_k ||q_{k-1} theta|| + q_{k-1} ||q_k theta|| = 1, exactly under a deep surrogate.
TEST(ConvergentIdentities, SumIsOneUnderSurrogate) {
  for (const CFSpec& cf : corpus()) {
    const Surrogate s = surrogate_at(cf, 60);
    const ConvergentList c = convergents(cf, 40);
    for (std::size_t k = 1; k < 40; ++k) {
      if (k == 1 && cf.quotient(1) == 1) continue;  // ||q_0 theta|| is not |q_0 theta - p_0| here
      const Convergent& a = c.values[k];
      const Convergent& b = c.values[k - 1];
      const mpq_class lhs = a.q * dist_to_nearest_int(b.q * s.value()) + b.q * dist_to_nearest_int(a.q * s.value());
      EXPECT_EQ(lhs, 1) << "k=" << k;
    }
  }
}

// q_k ||q_k theta|| = 1/(a_{k+1} + theta_{k+2} + phi_k) and
// q_k ||q_{k-1} theta|| = 1/(1 + theta_{k+1} phi_k), as overlapping enclosures.
TEST(ConvergentIdentities, TailForms) {
  const mpq_class eps = pow10_inv(40);
  for (const CFSpec& cf : corpus()) {
    const ConvergentList c = convergents(cf, 22);
    for (std::size_t k = 2; k <= 20; ++k) {
      const TailReversal tr = tail_and_reversal(cf, k, eps);
      const CertifiedValue next = tail_and_reversal(cf, k + 1, eps).theta_k;
      const CertifiedValue after = tail_and_reversal(cf, k + 2, eps).theta_k;
      const CertifiedValue phi{tr.phi_k, 0};
      const CertifiedValue lhs3 = CertifiedValue{mpq_class(c.values[k].q), 0} * dist_to_int(cf, c.values[k].q, eps);
      const CertifiedValue rhs3 = (CertifiedValue{mpq_class(cf.quotient(k + 1)), 0} + after + phi).reciprocal();
      EXPECT_TRUE(lhs3.overlaps(rhs3)) << "k=" << k;
      const CertifiedValue lhs4 =
          CertifiedValue{mpq_class(c.values[k].q), 0} * dist_to_int(cf, c.values[k - 1].q, eps);
      const CertifiedValue rhs4 = (CertifiedValue{mpq_class(1), 0} + next * phi).reciprocal();
      EXPECT_TRUE(lhs4.overlaps(rhs4)) << "k=" << k;
    }
  }
}

// theta increases with even-indexed quotients and decreases with odd-indexed ones.
TEST(Monotonicity, EvenUpOddDown) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Quotient> q(1, 6);
  const mpq_class eps = pow10_inv(40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Quotient> a(10);
    for (auto& x : a) x = q(rng);
    const CFSpec base(0, a, {1});
    const CertifiedValue t0 = eval_theta(base, eps);
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::vector<Quotient> b = a;
      ++b[i];
      const CertifiedValue t1 = eval_theta(CFSpec(0, b, {1}), eps);
      const std::size_t index = i + 1;
      if (index % 2 == 0) {
        EXPECT_GT(t1.lower(), t0.upper());
      } else {
        EXPECT_LT(t1.upper(), t0.lower());
      }
    }
  }
}

TEST(SbExtrema, Examples) {
  const SbExtrema one = sb_extrema(1);
  EXPECT_EQ(one.min, (QuadraticNumber::sqrt_of(5) - QuadraticNumber(1L)) / QuadraticNumber(2L));
  EXPECT_EQ(one.max, (QuadraticNumber::sqrt_of(5) + QuadraticNumber(1L)) / QuadraticNumber(2L));
  const SbExtrema two = sb_extrema(2);
  EXPECT_EQ(two.min, (QuadraticNumber::sqrt_of(3) - QuadraticNumber(1L)) / QuadraticNumber(2L));
  EXPECT_EQ(two.max, QuadraticNumber::sqrt_of(3) + QuadraticNumber(1L));
  for (Quotient b = 1; b <= 50; ++b) {
    const SbExtrema e = sb_extrema(b);
    EXPECT_LT(e.min, QuadraticNumber(1L));
    EXPECT_GT(e.max, QuadraticNumber(1L));
    EXPECT_EQ(e.min, CFSpec::extremal(b).exact_value());
  }
  EXPECT_THROW(sb_extrema(0), DomainError);
}

TEST(SbExtrema, RandomMembersLieBetween) {
  std::mt19937_64 rng(11);
  for (Quotient b = 1; b <= 6; ++b) {
    const SbExtrema e = sb_extrema(b);
    for (int i = 0; i < 30; ++i) {
      const CFSpec cf = oracle::random_badly_approximable(rng, b);
      const QuadraticNumber v = cf.exact_value();
      EXPECT_LE(e.min, v);
    }
  }
}

TEST(CertifiedValue, Arithmetic) {
  const CertifiedValue x{mpq_class(1), mpq_class(1, 10)};
  const CertifiedValue y{mpq_class(2), mpq_class(1, 5)};
  EXPECT_EQ((x + y).center, 3);
  EXPECT_EQ((x + y).radius, mpq_class(3, 10));
  EXPECT_TRUE((x * y).contains(mpq_class(11, 10) * mpq_class(11, 5)));
  EXPECT_TRUE((x * y).contains(mpq_class(9, 10) * mpq_class(9, 5)));
  EXPECT_TRUE(x.reciprocal().contains(mpq_class(10, 11)));
  EXPECT_TRUE(x.reciprocal().contains(mpq_class(10, 9)));
  EXPECT_THROW((CertifiedValue{mpq_class(0), mpq_class(1)}).reciprocal(), DomainError);
}

TEST(Surrogate, ErrorBound) {
  for (const CFSpec& cf : corpus()) {
    const QuadraticNumber truth = cf.exact_value();
    for (std::size_t depth : {1u, 5u, 20u}) {
      const Surrogate s = surrogate_at(cf, depth);
      EXPECT_LE(QuadraticNumber(s.value()) - truth, QuadraticNumber(s.theta_radius));
      EXPECT_GE(QuadraticNumber(s.value()) - truth, QuadraticNumber(-s.theta_radius));
    }
  }
  const Surrogate r = surrogate_at(CFSpec(0, {2, 3}), 50);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.value(), mpq_class(3, 7));
}
