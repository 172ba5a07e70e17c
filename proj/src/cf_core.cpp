#include "badapprox/cf_core.hpp"

#include <algorithm>
#include <limits>

#include "badapprox/errors.hpp"

namespace badapprox {

namespace {

void require_positive(const std::vector<Quotient>& quotients, const char* what) {
  for (const Quotient a : quotients) {
    if (a < 1) throw DomainError(std::string("CFSpec: ") + what + " quotients must be >= 1");
  }
}

std::vector<Quotient> primitive_root(std::vector<Quotient> period) {
  const std::size_t n = period.size();
  for (std::size_t t = 1; t < n; ++t) {
    if (n % t != 0) continue;
    bool repeats = true;
    for (std::size_t i = t; i < n && repeats; ++i) repeats = period[i] == period[i % t];
    if (repeats) {
      period.resize(t);
      break;
    }
  }
  return period;
}

// Walks p_k, q_k forward from the standard seeds.
class ConvergentWalker {
 public:
  explicit ConvergentWalker(const CFSpec& cf) : cf_(cf), limit_(cf.length()) {}

  bool has_next() const { return !limit_ || next_k_ < *limit_; }

  const Convergent& next() {
    const Quotient a = cf_.quotient(next_k_);
    mpz_class p = a * p1_ + p2_;
    mpz_class q = a * q1_ + q2_;
    p2_ = std::move(p1_);
    q2_ = std::move(q1_);
    p1_ = p;
    q1_ = q;
    current_ = {next_k_, std::move(p), std::move(q)};
    ++next_k_;
    return current_;
  }

 private:
  const CFSpec& cf_;
  std::optional<std::size_t> limit_;
  std::size_t next_k_ = 0;
  mpz_class p1_{1}, p2_{0}, q1_{0}, q2_{1};
  Convergent current_;
};

Surrogate make_surrogate(const Convergent& at, const Convergent* next) {
  Surrogate s;
  s.depth = at.k;
  s.p = at.p;
  s.q = at.q;
  if (next == nullptr) {
    s.exact = true;
    s.theta_radius = 0;
  } else {
    s.theta_radius = mpq_class(mpz_class(1), at.q * next->q);
  }
  return s;
}

}  // namespace

CFSpec::CFSpec(Quotient a0, std::vector<Quotient> prefix, std::vector<Quotient> period)
    : a0_(a0), prefix_(std::move(prefix)), period_(std::move(period)) {
  require_positive(prefix_, "prefix");
  require_positive(period_, "period");
  if (period_.empty()) {
    if (!prefix_.empty() && prefix_.back() == 1) {
      prefix_.pop_back();
      if (prefix_.empty()) {
        ++a0_;
      } else {
        ++prefix_.back();
      }
    }
    return;
  }
  period_ = primitive_root(std::move(period_));
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
}

CFSpec CFSpec::golden() { return {0, {}, {1}}; }
CFSpec CFSpec::sqrt2() { return {0, {}, {2}}; }
CFSpec CFSpec::extremal(Quotient bound) {
  if (bound < 1) throw DomainError("extremal: B must be >= 1");
  return {0, {}, {bound, 1}};
}

std::optional<std::size_t> CFSpec::length() const {
  if (is_rational()) return prefix_.size() + 1;
  return std::nullopt;
}

Quotient CFSpec::quotient(std::size_t i) const {
  if (i == 0) return a0_;
  if (i <= prefix_.size()) return prefix_[i - 1];
  if (period_.empty()) throw DomainError("CFSpec: index past the end of a finite expansion");
  return period_[(i - 1 - prefix_.size()) % period_.size()];
}

Quotient CFSpec::bound() const {
  Quotient b = 0;
  for (const Quotient a : prefix_) b = std::max(b, a);
  for (const Quotient a : period_) b = std::max(b, a);
  return b;
}

CFSpec CFSpec::tail(std::size_t k) const {
  if (k == 0) throw DomainError("CFSpec::tail: k must be >= 1");
  if (is_rational()) {
    if (k > prefix_.size() + 1) throw DomainError("CFSpec::tail: k past the end of the expansion");
    if (k == prefix_.size() + 1) return {};
    return {0, std::vector<Quotient>(prefix_.begin() + static_cast<std::ptrdiff_t>(k - 1), prefix_.end())};
  }
  if (k <= prefix_.size()) {
    return {0, std::vector<Quotient>(prefix_.begin() + static_cast<std::ptrdiff_t>(k - 1), prefix_.end()),
            period_};
  }
  const std::size_t shift = (k - 1 - prefix_.size()) % period_.size();
  std::vector<Quotient> rotated = period_;
  std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(shift), rotated.end());
  return {0, {}, std::move(rotated)};
}

QuadraticNumber CFSpec::exact_value() const {
  // Head convergents over a0 and the prefix.
  mpz_class hp1 = 1, hp2 = 0, hq1 = 0, hq2 = 1;
  auto step = [](Quotient a, mpz_class& p1, mpz_class& p2, mpz_class& q1, mpz_class& q2) {
    mpz_class p = a * p1 + p2;
    mpz_class q = a * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  };
  step(a0_, hp1, hp2, hq1, hq2);
  for (const Quotient a : prefix_) step(a, hp1, hp2, hq1, hq2);
  if (is_rational()) return QuadraticNumber(mpq_class(hp1, hq1));

  // x = [period; x] solves q_m x^2 + (q_{m-1} - p_m) x - p_{m-1} = 0.
  mpz_class pp1 = 1, pp2 = 0, pq1 = 0, pq2 = 1;
  for (const Quotient a : period_) step(a, pp1, pp2, pq1, pq2);
  const mpz_class disc = (pq2 - pp1) * (pq2 - pp1) + 4 * pq1 * pp2;
  if (!disc.fits_slong_p() || disc > mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw DomainError("CFSpec::exact_value: period too long for an int64 radicand");
  }
  const QuadraticNumber x(mpq_class(pp1 - pq2, 2 * pq1), mpq_class(mpz_class(1), 2 * pq1), disc.get_si());
  // theta = (P x + P') / (Q x + Q') with the head convergents.
  return (QuadraticNumber(mpq_class(hp1)) * x + QuadraticNumber(mpq_class(hp2))) /
         (QuadraticNumber(mpq_class(hq1)) * x + QuadraticNumber(mpq_class(hq2)));
}

CertifiedValue operator+(const CertifiedValue& x, const CertifiedValue& y) {
  return {x.center + y.center, x.radius + y.radius};
}

CertifiedValue operator-(const CertifiedValue& x, const CertifiedValue& y) {
  return {x.center - y.center, x.radius + y.radius};
}

CertifiedValue operator*(const CertifiedValue& x, const CertifiedValue& y) {
  return {x.center * y.center, abs(x.center) * y.radius + abs(y.center) * x.radius + x.radius * y.radius};
}

CertifiedValue CertifiedValue::reciprocal() const {
  const mpq_class lo = lower();
  const mpq_class hi = upper();
  if (lo <= 0 && hi >= 0) throw DomainError("CertifiedValue::reciprocal: enclosure contains 0");
  const mpq_class a = 1 / hi;
  const mpq_class b = 1 / lo;
  const mpq_class lo2 = a < b ? a : b;
  const mpq_class hi2 = a < b ? b : a;
  return {(lo2 + hi2) / 2, (hi2 - lo2) / 2};
}

ConvergentList convergents(const CFSpec& cf, std::size_t count) {
  if (count < 1) throw DomainError("convergents: count must be >= 1");
  ConvergentList out;
  ConvergentWalker walker(cf);
  while (out.values.size() < count && walker.has_next()) out.values.push_back(walker.next());
  out.truncated = out.values.size() < count;
  return out;
}

Surrogate surrogate_at(const CFSpec& cf, std::size_t depth) {
  ConvergentWalker walker(cf);
  Convergent at = walker.next();
  while (at.k < depth && walker.has_next()) at = walker.next();
  if (!walker.has_next()) return make_surrogate(at, nullptr);
  const Convergent next = walker.next();
  return make_surrogate(at, &next);
}

Surrogate surrogate_within(const CFSpec& cf, const mpq_class& eps) {
  if (eps <= 0) throw DomainError("surrogate_within: eps must be positive");
  ConvergentWalker walker(cf);
  Convergent at = walker.next();
  for (;;) {
    if (!walker.has_next()) return make_surrogate(at, nullptr);
    Convergent next = walker.next();
    Surrogate s = make_surrogate(at, &next);
    if (s.theta_radius <= eps) return s;
    at = std::move(next);
  }
}

CertifiedValue eval_theta(const CFSpec& cf, const mpq_class& eps) {
  const Surrogate s = surrogate_within(cf, eps);
  return {s.value(), s.theta_radius};
}

mpq_class dist_to_nearest_int(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  const mpq_class frac = x - fl;
  const mpq_class other = 1 - frac;
  return frac < other ? frac : other;
}

CertifiedValue dist_to_int(const CFSpec& cf, const mpz_class& n, const mpq_class& eps) {
  if (n < 1) throw DomainError("dist_to_int: n must be >= 1");
  if (eps <= 0) throw DomainError("dist_to_int: eps must be positive");
  const Surrogate s = surrogate_within(cf, eps / n);
  return {dist_to_nearest_int(n * s.value()), s.radius_for(n)};
}

TailReversal tail_and_reversal(const CFSpec& cf, std::size_t k, const mpq_class& eps) {
  if (k == 0) throw DomainError("tail_and_reversal: phi_0 is undefined, k must be >= 1");
  const ConvergentList conv = convergents(cf, k + 1);
  if (conv.truncated) throw DomainError("tail_and_reversal: k past the end of the expansion");
  TailReversal out;
  out.phi_k = mpq_class(conv.values[k - 1].q, conv.values[k].q);
  out.theta_k = eval_theta(cf.tail(k), eps);
  return out;
}

SbExtrema sb_extrema(Quotient bound) {
  if (bound < 1) throw DomainError("sb_extrema: B must be >= 1");
  const mpz_class b = bound;
  const std::int64_t disc = bound * bound + 4 * bound;
  const QuadraticNumber root = QuadraticNumber::sqrt_of(disc);
  return {(root - QuadraticNumber(mpq_class(b))) / QuadraticNumber(mpq_class(2 * b)),
          (root + QuadraticNumber(mpq_class(b))) / QuadraticNumber(mpq_class(2))};
}

}  // namespace badapprox
