#include "badapprox/three_gap.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "badapprox/errors.hpp"

namespace badapprox {

namespace {

// n p = floor * q + residue for n = 1..N, streamed to `visit(n, floor, residue)`.
template <typename Visit>
void for_each_residue(const Surrogate& s, std::uint64_t n, Visit&& visit) {
  mpz_class step;
  mpz_class step_floor;
  mpz_fdiv_qr(step_floor.get_mpz_t(), step.get_mpz_t(), s.p.get_mpz_t(), s.q.get_mpz_t());
  mpz_class r = 0;
  mpz_class fl = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    r += step;
    fl += step_floor;
    if (r >= s.q) {
      r -= s.q;
      ++fl;
    }
    visit(i, fl, r);
  }
}

mpz_class floor_of_multiple(const Surrogate& s, std::uint64_t n) {
  mpz_class prod = s.p * mpz_class(static_cast<unsigned long>(n));
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), prod.get_mpz_t(), s.q.get_mpz_t());
  return fl;
}

mpz_class to_mpz(std::uint64_t x) { return mpz_class(static_cast<unsigned long>(x)); }

// Gap lengths are ordered under the surrogate; the maximum is retaken at theta.
CertifiedValue largest_product(const CFSpec& cf, const std::vector<GapLength>& gaps, std::uint64_t n,
                               const mpq_class& eps) {
  const mpz_class big_n = to_mpz(n);
  const mpq_class each = eps / big_n;
  CertifiedValue best;
  for (const GapLength& g : gaps) {
    const CertifiedValue v = certify(g.form, cf, each);
    if (&g == &gaps.front() || v.center > best.center) best = v;
  }
  return {best.center * big_n, best.radius * big_n};
}

}  // namespace

const mpq_class& report_eps() {
  static const mpq_class eps(mpz_class(1), mpz_class("1" + std::string(45, '0')));
  return eps;
}

CertifiedValue certify(const LinearForm& form, const CFSpec& cf, const mpq_class& eps) {
  if (form.coeff == 0) return {mpq_class(-form.offset), mpq_class(0)};
  const CertifiedValue t = eval_theta(cf, eps / abs(form.coeff));
  return {form.at(t.center), abs(form.coeff) * t.radius};
}

LinearForm operator+(const LinearForm& x, const LinearForm& y) {
  return {x.coeff + y.coeff, x.offset + y.offset};
}

LinearForm operator-(const LinearForm& x, const LinearForm& y) {
  return {x.coeff - y.coeff, x.offset - y.offset};
}

LinearForm operator*(const mpz_class& k, const LinearForm& x) { return {k * x.coeff, k * x.offset}; }

LinearForm convergent_distance(const Convergent& c) {
  // q_k theta - p_k has sign (-1)^k.
  if (c.k % 2 == 0) return {c.q, c.p};
  return {-c.q, -c.p};
}

Surrogate gap_surrogate(const CFSpec& cf, std::uint64_t n, std::size_t extra_depth) {
  if (n < 1) throw DomainError("gap set: N must be >= 1");
  const mpz_class big_n = to_mpz(n);
  if (cf.is_rational()) {
    const Surrogate exact = surrogate_at(cf, *cf.length() - 1);
    if (big_n >= exact.q) {
      throw CoincidentPointsError("rational theta with N >= q_last = " + exact.q.get_str() +
                                  ": points coincide");
    }
    return exact;
  }
  const mpz_class b = std::max<Quotient>(cf.bound(), 1);
  const mpz_class threshold = 16 * (b + 2) * big_n * big_n;
  const ConvergentList first = convergents(cf, 2);
  mpz_class q_prev = first.values[0].q;
  mpz_class q_cur = first.values[1].q;
  std::size_t depth = 0;
  // Walk until q_depth * q_{depth+1} clears the threshold.
  while (q_prev * q_cur <= threshold) {
    ++depth;
    const mpz_class next = cf.quotient(depth + 1) * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = next;
  }
  return surrogate_at(cf, depth + extra_depth);
}

CertifiedValue GapSet::certified_product(const mpq_class& eps) const {
  return largest_product(theta, gaps, n, eps);
}

GapSet gap_set(const CFSpec& cf, std::uint64_t n, std::size_t extra_depth) {
  GapSet out;
  out.theta = cf;
  out.n = n;
  out.surrogate = gap_surrogate(cf, n, extra_depth);
  const Surrogate& s = out.surrogate;

  out.points.reserve(n + 2);
  out.points.push_back({0, mpz_class(0), mpz_class(0)});
  for_each_residue(s, n, [&](std::uint64_t i, const mpz_class& fl, const mpz_class& r) {
    out.points.push_back({static_cast<std::int64_t>(i), fl, r});
  });
  out.points.push_back({0, mpz_class(-1), s.q});
  std::sort(out.points.begin(), out.points.end(),
            [](const GapPoint& x, const GapPoint& y) { return x.residue < y.residue; });

  std::map<mpz_class, GapLength> by_length;
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const GapPoint& lo = out.points[i];
    const GapPoint& hi = out.points[i + 1];
    const mpz_class diff = hi.residue - lo.residue;
    if (diff == 0) throw CoincidentPointsError("gap set: two points coincide");
    auto [it, fresh] = by_length.try_emplace(diff);
    if (fresh) {
      it->second.length = mpq_class(diff, s.q);
      it->second.length.canonicalize();
      it->second.form = {mpz_class(hi.n - lo.n), hi.floor - lo.floor};
    }
    ++it->second.multiplicity;
  }
  for (auto& [diff, gap] : by_length) out.gaps.push_back(std::move(gap));
  return out;
}

ThreeGapCheck verify_three_gap(const GapSet& g) {
  ThreeGapCheck check;
  check.point_count = g.points.size() == g.n + 2 && g.points.front().residue == 0 &&
                      g.points.back().residue == g.surrogate.q;
  check.strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < g.points.size(); ++i) {
    if (!(g.points[i].residue < g.points[i + 1].residue)) check.strictly_increasing = false;
  }
  mpq_class total = 0;
  std::size_t count = 0;
  for (const GapLength& gap : g.gaps) {
    total += gap.length * static_cast<unsigned long>(gap.multiplicity);
    count += gap.multiplicity;
  }
  check.lengths_sum_to_one = total == 1 && count == g.n + 1;
  // Rational theta at N = q - 1 leaves a single length.
  const bool rational = g.surrogate.exact && g.surrogate.theta_radius == 0;
  check.two_or_three = g.gaps.size() == 2 || g.gaps.size() == 3 || (rational && g.gaps.size() == 1);
  check.largest_is_sum = g.gaps.size() != 3 || g.gaps[2].length == g.gaps[0].length + g.gaps[1].length;
  return check;
}

CertifiedValue GapStructure::certified_product(const mpq_class& eps) const {
  return largest_product(theta, gaps, n, eps);
}

GapStructure gap_structure(const CFSpec& cf, std::uint64_t n) {
  GapStructure out;
  out.theta = cf;
  out.n = n;
  out.surrogate = gap_surrogate(cf, n);
  const Surrogate& s = out.surrogate;

  mpz_class r_u;
  mpz_class r_v;
  constexpr std::uint64_t kFast = std::uint64_t{1} << 62;
  if (s.q < to_mpz(kFast)) {
    mpz_class step_z;
    mpz_fdiv_r(step_z.get_mpz_t(), s.p.get_mpz_t(), s.q.get_mpz_t());
    const std::uint64_t q = s.q.get_ui();
    const std::uint64_t step = step_z.get_ui();
    std::uint64_t r = 0;
    std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t hi = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
      r += step;
      if (r >= q) r -= q;
      if (r < lo) {
        lo = r;
        out.u = i;
      }
      if (r > hi) {
        hi = r;
        out.v = i;
      }
    }
    r_u = to_mpz(lo);
    r_v = to_mpz(hi);
  } else {
    bool first = true;
    for_each_residue(s, n, [&](std::uint64_t i, const mpz_class&, const mpz_class& r) {
      if (first || r < r_u) {
        r_u = r;
        out.u = i;
      }
      if (first || r > r_v) {
        r_v = r;
        out.v = i;
      }
      first = false;
    });
  }

  const mpz_class fl_u = floor_of_multiple(s, out.u);
  const mpz_class fl_v = floor_of_multiple(s, out.v);
  const LinearForm small{to_mpz(out.u), fl_u};
  const LinearForm large{-to_mpz(out.v), -fl_v - 1};

  const std::uint64_t count_small = n + 1 - out.u;
  const std::uint64_t count_large = std::min(out.u, n + 1 - out.v);
  const std::uint64_t count_sum = out.u + out.v > n + 1 ? out.u + out.v - n - 1 : 0;

  std::vector<GapLength> gaps;
  auto add = [&](const LinearForm& form, const mpz_class& residue_len, std::uint64_t count) {
    if (count == 0) return;
    mpq_class len(residue_len, s.q);
    len.canonicalize();
    gaps.push_back({len, form, static_cast<std::size_t>(count)});
  };
  add(small, r_u, count_small);
  add(large, s.q - r_v, count_large);
  add(small + large, r_u + s.q - r_v, count_sum);
  std::sort(gaps.begin(), gaps.end(),
            [](const GapLength& x, const GapLength& y) { return x.length < y.length; });
  // Two of the three rules can produce equal lengths only for rational theta.
  for (std::size_t i = 0; i + 1 < gaps.size();) {
    if (gaps[i].length == gaps[i + 1].length) {
      gaps[i].multiplicity += gaps[i + 1].multiplicity;
      gaps.erase(gaps.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    } else {
      ++i;
    }
  }
  out.gaps = std::move(gaps);
  return out;
}

std::string to_string(Bracket bracket) {
  return bracket == Bracket::kFirst ? "interval-1" : "interval-2";
}

RegimeTag classify_regime(const CFSpec& cf, std::uint64_t n) {
  const mpz_class big_n = to_mpz(n);
  std::vector<Convergent> conv;
  {
    const ConvergentList head = convergents(cf, 2);
    if (head.truncated) throw DomainError("classify_regime: expansion has no q_1");
    conv = head.values;
  }
  if (big_n < conv[1].q) throw DomainError("classify_regime: N < q_1 = " + conv[1].q.get_str());
  // Extend until q_{k+1} > N.
  for (;;) {
    const std::size_t next = conv.size();
    if (cf.length() && next >= *cf.length()) {
      throw CoincidentPointsError("classify_regime: rational theta with N >= q_last");
    }
    const Quotient a = cf.quotient(next);
    Convergent c{next, a * conv[next - 1].p + conv[next - 2].p, a * conv[next - 1].q + conv[next - 2].q};
    const bool beyond = c.q > big_n;
    conv.push_back(std::move(c));
    if (beyond) break;
  }
  RegimeTag tag;
  tag.k = conv.size() - 2;
  const Convergent& ck = conv[tag.k];
  const Convergent& ckm1 = conv[tag.k - 1];
  tag.q_k = ck.q;
  tag.q_km1 = ckm1.q;
  const LinearForm dk = convergent_distance(ck);
  const LinearForm dkm1 = convergent_distance(ckm1);
  if (big_n < ck.q + ckm1.q) {
    tag.bracket = Bracket::kFirst;
    tag.l = 0;
    tag.predicted = {dk, dkm1, dk + dkm1};
  } else {
    tag.bracket = Bracket::kSecond;
    const mpz_class l = (big_n - ckm1.q) / ck.q;
    tag.l = l.get_si();
    tag.predicted = {dk, dkm1 - (l - 1) * dk, dkm1 - l * dk};
  }
  return tag;
}

bool gaps_match_regime(const GapSet& g, const RegimeTag& tag) {
  const bool rational = g.surrogate.exact && g.surrogate.theta_radius == 0;
  const mpq_class theta = g.surrogate.value();
  for (const GapLength& gap : g.gaps) {
    const bool found = std::any_of(tag.predicted.begin(), tag.predicted.end(), [&](const LinearForm& f) {
      return rational ? f.at(theta) == gap.length : f == gap.form;
    });
    if (!found) return false;
  }
  return true;
}

QuadraticNumber f_closed(Quotient bound) {
  if (bound < 1) throw DomainError("f(B): B must be >= 1");
  const mpz_class a = bound / 2;
  if (bound % 2 == 0) {
    // 1 + (a+1)^2 / (2 sqrt(a^2 + 2a))
    const mpz_class radicand = a * a + 2 * a;
    return QuadraticNumber(mpq_class(1), mpq_class((a + 1) * (a + 1), 2 * radicand), radicand.get_si());
  }
  // 1 + (a^2 + 3a + 2) / sqrt(4a^2 + 12a + 5)
  const mpz_class radicand = 4 * a * a + 12 * a + 5;
  return QuadraticNumber(mpq_class(1), mpq_class(a * a + 3 * a + 2, radicand), radicand.get_si());
}

std::string f_closed_symbolic(Quotient bound) {
  if (bound < 1) throw DomainError("f(B): B must be >= 1");
  const std::int64_t a = bound / 2;
  std::int64_t num = 0;
  std::int64_t den = 0;
  std::int64_t radicand = 0;
  if (bound % 2 == 0) {
    num = (a + 1) * (a + 1);
    den = 2;
    radicand = a * a + 2 * a;
  } else {
    num = a * a + 3 * a + 2;
    den = 1;
    radicand = 4 * a * a + 12 * a + 5;
  }
  const auto [c, d] = square_free_split(radicand);
  mpq_class coeff(num, den * c);
  coeff.canonicalize();
  const std::string root = "sqrt(" + std::to_string(d) + ")";
  if (coeff.get_den() == 1) return "1+" + coeff.get_num().get_str() + "/" + root;
  return "1+" + coeff.get_num().get_str() + "/(" + coeff.get_den().get_str() + "*" + root + ")";
}

FBounds f_bounds(Quotient bound) {
  if (bound < 1) throw DomainError("f(B) bounds: B must be >= 1");
  const mpz_class b = bound;
  // sqrt(4/5) = (2/5) sqrt(5)
  mpq_class lower(b, 4);
  lower.canonicalize();
  return {lower, QuadraticNumber(mpq_class(b), mpq_class(2 * b, 5), 5)};
}

ExtremalWitness extremal_witness(Quotient bound, unsigned index) {
  if (bound < 1) throw DomainError("extremal_witness: B must be >= 1");
  if (index < 1) throw DomainError("extremal_witness: n must be >= 1");
  ExtremalWitness w;
  w.bound = bound;
  w.index = index;
  w.theta = CFSpec::extremal(bound);
  const ConvergentList conv = convergents(w.theta, 2 * index + 1);
  const Convergent& odd = conv.values[2 * index - 1];
  const Convergent& even = conv.values[2 * index];

  const mpz_class big_n = odd.q + mpz_class((bound + 2) / 2) * even.q - 2;
  if (!big_n.fits_ulong_p()) throw DomainError("extremal_witness: N exceeds 64 bits");
  w.n = big_n.get_ui();
  mpz_class shift;  // floor((B-2)/2), which is -1 at B = 1
  mpz_fdiv_q_ui(shift.get_mpz_t(), mpz_class(bound - 2).get_mpz_t(), 2);
  w.predicted_form = convergent_distance(odd) - shift * convergent_distance(even);

  const GapStructure g = gap_structure(w.theta, w.n);
  w.predicted_gap = certify(w.predicted_form, w.theta, report_eps());
  w.predicted_in_gap_set = std::any_of(g.gaps.begin(), g.gaps.end(),
                                       [&](const GapLength& x) { return x.form == w.predicted_form; });
  w.predicted_is_largest = g.largest().form == w.predicted_form;
  w.certified_product = g.certified_product();
  w.product = w.certified_product.center;
  w.largest_gap = w.product / big_n;
  w.below_f = QuadraticNumber(w.certified_product.upper()) < f_closed(bound);
  return w;
}

}  // namespace badapprox
