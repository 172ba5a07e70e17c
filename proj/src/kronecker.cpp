#include "badapprox/kronecker.hpp"

#include <algorithm>
#include <optional>

#include "badapprox/errors.hpp"

namespace badapprox {

namespace {

constexpr std::size_t kMaxExtraDepth = 64;

struct Choice {
  std::size_t index = 0;
  bool certified = false;
};

mpq_class point_value(const GapSet& g, std::size_t i) { return g.point(i); }

mpq_class point_radius(const GapSet& g, std::size_t i) {
  return g.surrogate.theta_radius * mpz_class(static_cast<long>(g.points[i].n));
}

Choice choose(const GapSet& g, const mpq_class& beta) {
  // First point strictly above beta; the bracket is [it - 1, it].
  const auto it = std::upper_bound(g.points.begin() + 1, g.points.end(), beta,
                                   [&](const mpq_class& b, const GapPoint& pt) {
                                     return b < mpq_class(pt.residue, g.surrogate.q);
                                   });
  const std::size_t right = static_cast<std::size_t>(it - g.points.begin());
  const std::size_t left = right - 1;
  const mpq_class d_left = beta - point_value(g, left);
  const mpq_class d_right = point_value(g, right) - beta;
  Choice c;
  c.index = d_left <= d_right ? left : right;

  // The true nearest point lies among the bracket and its neighbours, since
  // the surrogate preserves order. Certify against each of them.
  const std::size_t lo = left == 0 ? 0 : left - 1;
  const std::size_t hi = std::min(right + 1, g.points.size() - 1);
  const mpq_class best_hi = abs(point_value(g, c.index) - beta) + point_radius(g, c.index);
  c.certified = true;
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j == c.index) continue;
    const mpq_class other_lo = abs(point_value(g, j) - beta) - point_radius(g, j);
    if (!(best_hi < other_lo)) c.certified = false;
  }
  return c;
}

KroneckerSolution build(const GapSet& g, Quotient bound, const mpq_class& beta, std::size_t index) {
  const GapPoint& pt = g.points[index];
  KroneckerSolution s;
  s.n = pt.n;
  s.p = pt.floor;
  const CertifiedValue point = certify({mpz_class(static_cast<long>(pt.n)), pt.floor}, g.theta, report_eps());
  s.certified_error = {abs(point.center - beta), point.radius};
  s.achieved_error = s.certified_error.center;
  const mpz_class big_n(static_cast<unsigned long>(g.n));
  s.bound = f_closed(bound) / QuadraticNumber(mpq_class(2 * big_n));
  s.legacy_bound = legacy_bound(bound, g.n);
  s.within_bound = QuadraticNumber(s.certified_error.upper()) <= s.bound;
  return s;
}

void require_beta(const mpq_class& beta) {
  if (beta < 0 || beta >= 1) throw DomainError("kronecker: beta must lie in [0, 1)");
}

}  // namespace

mpz_class legacy_bound(Quotient bound, std::uint64_t n) {
  if (bound < 1 || n < 1) throw DomainError("legacy_bound: B and N must be >= 1");
  const mpz_class big_n(static_cast<unsigned long>(n));
  return (mpz_class(bound) + 2) * big_n * big_n;
}

KroneckerSolution solve(const GapSet& gaps, Quotient bound, const mpq_class& beta) {
  require_beta(beta);
  return build(gaps, bound, beta, choose(gaps, beta).index);
}

KroneckerSolution solve(const CFSpec& cf, const mpq_class& beta, std::uint64_t n) {
  require_beta(beta);
  if (cf.a0() != 0 || cf == CFSpec{}) throw DomainError("kronecker: theta must lie in (0, 1)");
  const Quotient bound = std::max<Quotient>(cf.bound(), 1);
  std::optional<GapSet> g;
  Choice c;
  for (std::size_t extra = 0;; ++extra) {
    g = gap_set(cf, n, extra);
    c = choose(*g, beta);
    if (c.certified || g->surrogate.exact || extra == kMaxExtraDepth) break;
  }
  return build(*g, bound, beta, c.index);
}

}  // namespace badapprox
