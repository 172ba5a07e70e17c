#include "badapprox/quadratic.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "badapprox/errors.hpp"

namespace badapprox {

namespace {

int sgn(const mpq_class& x) { return ::sgn(x); }

// a^2 versus b^2 d for a + b*sqrt(d), decided in integers.
int sign_of(const mpq_class& a, const mpq_class& b, std::int64_t d) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const mpq_class lhs = a * a;
  const mpq_class rhs = b * b * d;
  // d is square-free and > 1 here, so the two sides never coincide.
  return lhs > rhs ? sa : sb;
}

std::string format_mpf(const mpf_class& value, int digits) {
  std::vector<char> buffer(static_cast<std::size_t>(digits) + 64);
  for (;;) {
    const int written =
        gmp_snprintf(buffer.data(), buffer.size(), "%.*Fg", digits, value.get_mpf_t());
    if (written >= 0 && static_cast<std::size_t>(written) < buffer.size()) break;
    buffer.resize(buffer.size() * 2);
  }
  return buffer.data();
}

mp_bitcnt_t bits_for(int digits) { return static_cast<mp_bitcnt_t>(digits) * 4 + 128; }

}  // namespace

std::pair<std::int64_t, std::int64_t> square_free_split(std::int64_t n) {
  if (n <= 0) throw DomainError("square_free_split: n must be positive");
  std::int64_t c = 1;
  std::int64_t d = 1;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) c *= p;
    if (e % 2 == 1) d *= p;
  }
  d *= rest;
  return {c, d};
}

QuadraticNumber::QuadraticNumber(mpq_class a, mpq_class b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)) {
  if (d <= 0) throw DomainError("QuadraticNumber: radicand must be positive");
  a_.canonicalize();
  b_.canonicalize();
  const auto [c, free] = square_free_split(d);
  b_ *= c;
  if (free == 1) {
    a_ += b_;
    b_ = 0;
  }
  d_ = b_ == 0 ? 1 : free;
}

QuadraticNumber QuadraticNumber::sqrt_of(std::int64_t n) { return {mpq_class(0), mpq_class(1), n}; }

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber out = *this;
  out.b_ = -out.b_;
  return out;
}

mpq_class QuadraticNumber::norm() const { return a_ * a_ - b_ * b_ * d_; }

int QuadraticNumber::sign() const { return sign_of(a_, b_, d_); }

void QuadraticNumber::unify(const QuadraticNumber& other) {
  if (other.b_ == 0 || other.d_ == d_) return;
  if (b_ == 0) {
    d_ = other.d_;
    return;
  }
  throw DomainError("QuadraticNumber: operands lie in different quadratic fields");
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& rhs) {
  unify(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  if (b_ == 0) d_ = 1;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& rhs) {
  unify(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  if (b_ == 0) d_ = 1;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& rhs) {
  unify(rhs);
  const mpq_class a = a_ * rhs.a_ + b_ * rhs.b_ * d_;
  const mpq_class b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = a;
  b_ = b;
  if (b_ == 0) d_ = 1;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& rhs) {
  const mpq_class n = rhs.norm();
  if (n == 0) throw DomainError("QuadraticNumber: division by zero");
  *this *= rhs.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

QuadraticNumber QuadraticNumber::pow(unsigned exponent) const {
  QuadraticNumber result(1L);
  QuadraticNumber base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

mpz_class QuadraticNumber::floor() const {
  mpz_class k;
  if (b_ == 0) {
    mpz_fdiv_q(k.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    return k;
  }
  const mp_bitcnt_t bits = 256 + mpz_sizeinbase(a_.get_num_mpz_t(), 2) +
                           mpz_sizeinbase(b_.get_num_mpz_t(), 2) +
                           mpz_sizeinbase(a_.get_den_mpz_t(), 2) +
                           mpz_sizeinbase(b_.get_den_mpz_t(), 2);
  mpf_class root(d_, bits);
  root = sqrt(root);
  mpf_class estimate(mpf_class(a_, bits) + mpf_class(b_, bits) * root, bits);
  mpf_floor(estimate.get_mpf_t(), estimate.get_mpf_t());
  k = estimate;
  while ((*this - QuadraticNumber(mpq_class(k))).sign() < 0) --k;
  while ((*this - QuadraticNumber(mpq_class(k + 1))).sign() >= 0) ++k;
  return k;
}

int compare(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) {
    return (x - y).sign();
  }
  // x - y = A - C with A = (x.a - y.a) + x.b sqrt(dx) and C = y.b sqrt(dy).
  const QuadraticNumber lhs(x.rational_part() - y.rational_part(), x.surd_coefficient(),
                            x.radicand());
  const int s_lhs = lhs.sign();
  const int s_rhs = sgn(y.surd_coefficient());
  if (s_lhs != s_rhs) return s_lhs > s_rhs ? 1 : -1;
  if (s_lhs == 0) return 0;
  const QuadraticNumber rhs_sq(y.surd_coefficient() * y.surd_coefficient() * y.radicand());
  const int diff = compare(lhs * lhs, rhs_sq);
  return s_lhs > 0 ? diff : -diff;
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) { return compare(x, y) == 0; }

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
  const int c = compare(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QuadraticNumber::to_double() const {
  mpf_class root(d_, 256);
  root = sqrt(root);
  const mpf_class v = mpf_class(a_, 256) + mpf_class(b_, 256) * root;
  return v.get_d();
}

std::string QuadraticNumber::to_decimal(int digits) const {
  const mp_bitcnt_t bits = bits_for(digits);
  mpf_class root(d_, bits);
  root = sqrt(root);
  const mpf_class v(mpf_class(a_, bits) + mpf_class(b_, bits) * root, bits);
  return format_mpf(v, digits);
}

std::string QuadraticNumber::to_string() const {
  std::ostringstream out;
  if (b_ == 0) {
    out << a_.get_str();
    return out.str();
  }
  if (a_ != 0) out << "(" << a_.get_str() << ")+";
  out << "(" << b_.get_str() << ")*sqrt(" << d_ << ")";
  return out.str();
}

std::string to_decimal(const mpq_class& value, int digits) {
  const mpf_class v(value, bits_for(digits));
  return format_mpf(v, digits);
}

}  // namespace badapprox
