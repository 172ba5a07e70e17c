#include "badapprox/sturmian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <thread>

#include "badapprox/errors.hpp"

namespace badapprox {

namespace {

std::uint64_t isqrt_u64(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  using u128 = unsigned __int128;
  while (static_cast<u128>(r) * r > x) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

// floor(m (sqrt 5 - 1) / 2) = floor((isqrt(5 m^2) - m) / 2) for m >= 0.
mpz_class golden_floor(const mpz_class& m) {
  mpz_class root = 5 * m * m;
  mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
  mpz_class out = root - m;
  mpz_fdiv_q_2exp(out.get_mpz_t(), out.get_mpz_t(), 1);
  return out;
}

std::uint64_t golden_floor_u64(std::uint64_t m) { return (isqrt_u64(5 * m * m) - m) / 2; }

constexpr std::uint64_t kGoldenFastLimit = 1'900'000'000ULL;  // 5 m^2 < 2^64

void set_bit(SturmianSeq& s, std::size_t i) { s.words[i / 64] |= std::uint64_t{1} << (i % 64); }

void fill_golden(SturmianSeq& s) {
  if (s.length + 1 < kGoldenFastLimit) {
    std::uint64_t prev = golden_floor_u64(1);
    for (std::size_t i = 0; i < s.length; ++i) {
      const std::uint64_t next = golden_floor_u64(i + 2);
      if (next != prev) set_bit(s, i);
      prev = next;
    }
    return;
  }
  mpz_class prev = golden_floor(mpz_class(1));
  for (std::size_t i = 0; i < s.length; ++i) {
    const mpz_class next = golden_floor(mpz_class(static_cast<unsigned long>(i + 2)));
    if (next != prev) set_bit(s, i);
    prev = next;
  }
}

void fill_surrogate(SturmianSeq& s) {
  // floor(m p/q) = floor(m theta) for every 1 <= m < q.
  const mpz_class needed(static_cast<unsigned long>(s.length + 2));
  Surrogate sur = surrogate_at(s.theta, 0);
  for (std::size_t depth = 1; sur.q < needed && !sur.exact; ++depth) sur = surrogate_at(s.theta, depth);
  mpz_class step;
  mpz_fdiv_r(step.get_mpz_t(), sur.p.get_mpz_t(), sur.q.get_mpz_t());
  // s_i = 1 iff adding theta to (i+1) theta crosses an integer.
  if (sur.q.fits_ulong_p() && sur.q < mpz_class(1UL << 62)) {
    const std::uint64_t q = sur.q.get_ui();
    const std::uint64_t st = step.get_ui();
    std::uint64_t r = st;  // residue of 1 * p
    for (std::size_t i = 0; i < s.length; ++i) {
      if (r + st >= q) set_bit(s, i);
      r += st;
      if (r >= q) r -= q;
    }
    return;
  }
  mpz_class r = step;
  for (std::size_t i = 0; i < s.length; ++i) {
    r += step;
    if (r >= sur.q) {
      set_bit(s, i);
      r -= sur.q;
    }
  }
}

QuadraticNumber theta_power(unsigned e) { return golden_theta().pow(e); }

}  // namespace

std::size_t SturmianSeq::count_ones() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    const std::size_t begin = w * 64;
    if (begin + 64 > length) {
      const std::size_t keep = length - begin;
      word &= keep == 0 ? 0 : (~std::uint64_t{0} >> (64 - keep));
    }
    total += static_cast<std::size_t>(std::popcount(word));
  }
  return total;
}

SturmianSeq generate(const CFSpec& cf, std::size_t length) {
  if (length < 1) throw DomainError("generate: length must be >= 1");
  if (cf.a0() != 0 || cf == CFSpec{}) throw DomainError("generate: theta must lie in (0, 1)");
  SturmianSeq s;
  s.theta = cf;
  s.length = length;
  s.words.assign((length + 63) / 64, 0);
  if (cf == CFSpec::golden()) {
    fill_golden(s);
  } else {
    fill_surrogate(s);
  }
  return s;
}

void SturmianWord::ensure(std::size_t length) {
  {
    std::shared_lock lock(mutex_);
    if (cache_.length >= length) return;
  }
  std::unique_lock lock(mutex_);
  if (cache_.length >= length) return;
  cache_ = generate(theta_, std::max(length, 2 * cache_.length));
}

SturmianSeq SturmianWord::prefix(std::size_t length) {
  ensure(length);
  std::shared_lock lock(mutex_);
  SturmianSeq out;
  out.theta = theta_;
  out.length = length;
  out.words.assign(cache_.words.begin(),
                   cache_.words.begin() + static_cast<std::ptrdiff_t>((length + 63) / 64));
  if (length % 64 != 0) out.words.back() &= ~std::uint64_t{0} >> (64 - length % 64);
  return out;
}

bool SturmianWord::bit(std::size_t i) {
  ensure(i + 1);
  std::shared_lock lock(mutex_);
  return cache_[i];
}

std::size_t SturmianWord::cached_length() const {
  std::shared_lock lock(mutex_);
  return cache_.length;
}

std::optional<std::uint64_t> agreement(const SturmianSeq& s, std::uint64_t r, std::uint64_t a,
                                       std::uint64_t b, std::uint64_t max_k) {
  if (!(a < b && b < r)) throw DomainError("agreement: need 0 <= a < b < r");
  for (std::uint64_t k = 0; k < max_k; ++k) {
    const std::uint64_t ib = r * k + b;
    if (ib >= s.length) throw LengthError(r * (max_k - 1) + b + 1, s.length);
    if (s[r * k + a] != s[ib]) return k;
  }
  return std::nullopt;
}

mpz_class diversity_bound(Quotient bound, std::uint64_t r) {
  const mpz_class b2 = mpz_class(bound) + 2;
  const mpz_class rr(static_cast<unsigned long>(r));
  return 2 * b2 * b2 * rr * rr;
}

std::vector<DiversityRow> diversity_scan(const CFSpec& cf, Quotient bound, std::uint64_t r_max) {
  if (r_max < 2) throw DomainError("diversity_scan: r_max must be >= 2");
  if (bound < 1 || cf.bound() > bound) throw DomainError("diversity_scan: theta is not in S_B");
  const mpz_class top = diversity_bound(bound, r_max);
  if (!top.fits_ulong_p()) throw DomainError("diversity_scan: r_max too large");
  SturmianWord word(cf);
  word.ensure(r_max * (top.get_ui() + 1) + r_max);
  const SturmianSeq seq = word.prefix(word.cached_length());

  std::vector<DiversityRow> rows;
  for (std::uint64_t r = 2; r <= r_max; ++r) {
    DiversityRow row;
    row.r = r;
    row.bound = diversity_bound(bound, r);
    const std::uint64_t max_k = row.bound.get_ui() + 1;

    // One result slot per a; pairs (a, b) are independent.
    struct Best {
      std::uint64_t k = 0;
      std::uint64_t b = 0;
      bool saturated = false;
    };
    std::vector<Best> best(r - 1);
    auto work = [&](std::uint64_t a) {
      Best out;
      for (std::uint64_t b = a + 1; b < r; ++b) {
        const auto k = agreement(seq, r, a, b, max_k);
        if (!k) {
          out = {max_k, b, true};
          break;
        }
        if (*k >= out.k) out = {*k, b, false};
      }
      best[a] = out;
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(r - 1)));
    if (workers == 1) {
      for (std::uint64_t a = 0; a + 1 < r; ++a) work(a);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          for (std::uint64_t a = t; a + 1 < r; a += workers) work(a);
        });
      }
    }
    for (std::uint64_t a = 0; a + 1 < r && !row.saturated; ++a) {
      if (a == 0 || best[a].saturated || best[a].k > row.max_agreement) {
        row.max_agreement = best[a].k;
        row.arg_a = a;
        row.arg_b = best[a].b;
        row.saturated = best[a].saturated;
      }
    }
    row.pass = !row.saturated && mpz_class(static_cast<unsigned long>(row.max_agreement)) <= row.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

QuadraticNumber golden_theta() { return {mpq_class(-1, 2), mpq_class(1, 2), 5}; }
QuadraticNumber golden_alpha() { return {mpq_class(1, 2), mpq_class(1, 2), 5}; }
QuadraticNumber golden_beta() { return {mpq_class(1, 2), mpq_class(-1, 2), 5}; }

QuadraticNumber golden_frac(const mpz_class& m) {
  const QuadraticNumber value = QuadraticNumber(mpq_class(m)) * golden_theta();
  const mpz_class fl = m >= 0 ? golden_floor(m) : value.floor();
  return value - QuadraticNumber(mpq_class(fl));
}

mpz_class fibonacci(unsigned n) {
  mpz_class out;
  mpz_fib_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class lucas(unsigned n) {
  mpz_class out;
  mpz_lucnum_ui(out.get_mpz_t(), n);
  return out;
}

FibLucasPair fib_lucas(unsigned n) {
  // Plain recurrences; check_identities compares against the Binet forms.
  mpz_class f0 = 0, f1 = 1, l0 = 2, l1 = 1;
  for (unsigned i = 0; i < n; ++i) {
    mpz_class f2 = f0 + f1;
    mpz_class l2 = l0 + l1;
    f0 = std::move(f1);
    f1 = std::move(f2);
    l0 = std::move(l1);
    l1 = std::move(l2);
  }
  return {n, f0, l0};
}

FibLucasCheck check_identities(const FibLucasPair& pair) {
  const QuadraticNumber alpha_n = golden_alpha().pow(pair.n);
  const QuadraticNumber beta_n = golden_beta().pow(pair.n);
  const QuadraticNumber root5 = QuadraticNumber::sqrt_of(5);
  const QuadraticNumber f(mpq_class(pair.f));
  const QuadraticNumber l(mpq_class(pair.l));
  FibLucasCheck check;
  check.binet_f = (alpha_n - beta_n) / root5 == f;
  check.binet_l = alpha_n + beta_n == l;
  if (pair.n == 0) {
    check.shift_f = check.shift_l = true;
    return check;
  }
  const FibLucasPair prev = fib_lucas(pair.n - 1);
  check.shift_f = f * golden_theta() == QuadraticNumber(mpq_class(prev.f)) - beta_n;
  check.shift_l = l * golden_theta() == QuadraticNumber(mpq_class(prev.l)) + root5 * beta_n;
  return check;
}

ABArrays ab_arrays(unsigned n) {
  if (n < 2) throw DomainError("ab_arrays: n must be >= 2");
  const std::size_t rows = lucas(2 * n + 1).get_ui() - 1;
  const std::size_t cols = fibonacci(2 * n).get_ui();
  const QuadraticNumber row_step = QuadraticNumber(-1L) * theta_power(4 * n);        // {F_4n theta} - 1
  const QuadraticNumber col_step = QuadraticNumber::sqrt_of(5) * theta_power(2 * n);  // {L_2n theta}
  const QuadraticNumber a_base = theta_power(2 * n - 1);                               // {F_{2n-1} theta}

  ABArrays out;
  out.n = n;
  out.a = Grid<QuadraticNumber>(rows, cols);
  out.b = Grid<QuadraticNumber>(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    QuadraticNumber entry = a_base + QuadraticNumber(static_cast<long>(j)) * col_step;
    for (std::size_t i = 0; i < rows; ++i) {
      out.a(i, j) = entry;
      out.b(i, j) = entry + col_step - a_base;
      entry += row_step;
    }
  }
  out.d = out.a(0, 1) - out.a(0, 0);
  out.d_prime = out.a(0, 0) - out.a(1, 0);
  out.d_second = out.a(rows - 1, 1) - out.a(0, 0);
  return out;
}

ABArrayCheck verify_ab_arrays(const ABArrays& arr, bool check_wrap_around) {
  const unsigned n = arr.n;
  const QuadraticNumber theta = golden_theta();
  const QuadraticNumber one(1L);
  const QuadraticNumber t4n = theta_power(4 * n);
  const QuadraticNumber root5 = QuadraticNumber::sqrt_of(5);
  const mpz_class f4n = fibonacci(4 * n);
  const mpz_class l2n = lucas(2 * n);
  const mpz_class f2nm1 = fibonacci(2 * n - 1);

  ABArrayCheck check;
  check.fractional_parts = golden_frac(f2nm1) == theta_power(2 * n - 1) &&
                           golden_frac(f4n) == one - t4n &&
                           golden_frac(l2n) == root5 * theta_power(2 * n);

  const QuadraticNumber gap = theta_power(2 * n + 1);
  check.constant_difference = true;
  check.inside_unit_interval = true;
  for (std::size_t k = 0; k < arr.a.data.size(); ++k) {
    const QuadraticNumber& x = arr.a.data[k];
    const QuadraticNumber& y = arr.b.data[k];
    if (!(y - x == gap)) check.constant_difference = false;
    if (!(x > QuadraticNumber(0L) && x < one && y > QuadraticNumber(0L) && y < one)) {
      check.inside_unit_interval = false;
    }
  }

  check.ascending = true;
  for (const Grid<QuadraticNumber>* g : {&arr.a, &arr.b}) {
    const QuadraticNumber* prev = nullptr;
    for (std::size_t j = 0; j < g->cols; ++j) {
      for (std::size_t i = g->rows; i-- > 0;) {
        const QuadraticNumber& cur = (*g)(i, j);
        if (prev != nullptr && !(*prev < cur)) check.ascending = false;
        prev = &cur;
      }
    }
  }

  check.step_formulas = arr.d == root5 * theta_power(2 * n) && arr.d_prime == t4n &&
                        arr.d_second == theta_power(2 * n + 1) + QuadraticNumber(2L) * t4n +
                                            theta_power(6 * n + 1);

  const QuadraticNumber& start = arr.a(arr.a.rows - 1, 0);
  const QuadraticNumber& end = arr.b(0, arr.b.cols - 1);
  check.start_and_end = start == QuadraticNumber(2L) * t4n + theta_power(6 * n + 1) &&
                        start > QuadraticNumber(0L) && end == one - t4n && end < one;

  if (check_wrap_around) {
    check.no_wrap_around = true;
    for (std::size_t i = 0; i < arr.a.rows && check.no_wrap_around; ++i) {
      for (std::size_t j = 0; j < arr.a.cols; ++j) {
        const mpz_class base = f4n * static_cast<unsigned long>(i) + l2n * static_cast<unsigned long>(j);
        if (!(arr.a(i, j) == golden_frac(base + f2nm1) && arr.b(i, j) == golden_frac(base + l2n))) {
          check.no_wrap_around = false;
          break;
        }
      }
    }
  }
  return check;
}

std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs(const ABArrays& arr) {
  const QuadraticNumber boundary = QuadraticNumber(1L) - golden_theta();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < arr.a.rows; ++i) {
    for (std::size_t j = 0; j < arr.a.cols; ++j) {
      if (arr.a(i, j) < boundary && boundary < arr.b(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

LowerBoundWitness lower_bound_witness(unsigned n) {
  if (n < 2) throw DomainError("lower_bound_witness: n must be >= 2");
  LowerBoundWitness out;
  out.n = n;
  const mpz_class l2n = lucas(2 * n);
  const mpz_class f2n = fibonacci(2 * n);
  const mpz_class f4n = fibonacci(4 * n);
  const mpz_class f4np1 = fibonacci(4 * n + 1);
  const mpz_class l2np1 = lucas(2 * n + 1);
  const mpz_class f2nm2 = fibonacci(2 * n - 2);

  DiversityWitness& w = out.witness;
  w.r = l2n.get_ui();
  w.a = fibonacci(2 * n - 1).get_ui() - 1;
  w.b = w.r - 1;
  w.bound = diversity_bound(1, w.r);
  out.statement_k = mpz_class(f4np1 - fibonacci(2 * n + 1) - 1).get_ui();
  out.proof_k = mpz_class(f4np1 - f2n - 1).get_ui();

  const std::uint64_t max_k = std::max(out.statement_k, out.proof_k) + 2;
  const SturmianSeq seq = generate(CFSpec::golden(), w.r * max_k + w.r);
  const auto k = agreement(seq, w.r, w.a, w.b, max_k);
  if (!k) throw VerificationError("lower_bound_witness: no disagreement within the predicted range");
  w.k_star = *k;
  out.matches_statement = w.k_star == out.statement_k;
  out.matches_proof = w.k_star == out.proof_k;
  out.disagreement_bits = {seq[w.r * w.k_star + w.a] ? 1 : 0, seq[w.r * w.k_star + w.b] ? 1 : 0};

  // Crossing entry of the arrays, evaluated directly.
  out.crossing = {mpz_class(l2np1 - 2).get_ui(), f2nm2.get_ui()};
  out.crossing_k = mpz_class((l2np1 - 2) * f2n + f2nm2).get_ui();
  const QuadraticNumber theta = golden_theta();
  const QuadraticNumber theta2 = theta * theta;
  const QuadraticNumber root5 = QuadraticNumber::sqrt_of(5);
  const QuadraticNumber i_q{mpq_class(l2np1 - 2)};
  const QuadraticNumber j_q{mpq_class(f2nm2)};
  const QuadraticNumber row_step = QuadraticNumber(-1L) * theta_power(4 * n);
  const QuadraticNumber col_step = root5 * theta_power(2 * n);
  const QuadraticNumber a_entry = row_step * i_q + col_step * j_q + theta_power(2 * n - 1);
  const QuadraticNumber b_entry = row_step * i_q + col_step * j_q + col_step;
  out.crossing_brackets = a_entry < theta2 && theta2 < b_entry && theta2 == QuadraticNumber(1L) - theta;
  const QuadraticNumber common = QuadraticNumber(2L) * theta_power(4 * n) + theta_power(6 * n + 1) -
                                 theta_power(4 * n - 2);
  out.crossing_closed_forms =
      a_entry == theta2 + common &&
      b_entry == theta2 + root5 * theta_power(2 * n) + common - theta_power(2 * n - 1);
  out.lower_estimate = theta2 - theta_power(4 * n - 2) < a_entry && a_entry < theta2;
  out.upper_estimate = theta2 < b_entry &&
                       b_entry < theta2 + theta_power(2 * n - 3) + QuadraticNumber(3L) * theta_power(4 * n);
  out.product_identity = (l2np1 - 2) * f4n + f2nm2 * l2n == l2n * (f4np1 - fibonacci(2 * n + 1) - 1);
  return out;
}

RatioReport ratio_report(unsigned n_from, unsigned n_to) {
  if (n_from < 1 || n_to < n_from) throw DomainError("ratio_report: need 1 <= n_from <= n_to");
  RatioReport out;
  out.limit = QuadraticNumber(mpq_class(1, 2), mpq_class(1, 10), 5);
  out.stated_limit = QuadraticNumber(mpq_class(1), mpq_class(1, 10), 5);
  const double limit = out.limit.to_double();
  for (unsigned n = n_from; n <= n_to; ++n) {
    const mpz_class l2n = lucas(2 * n);
    RatioRow row;
    row.n = n;
    row.ratio = mpq_class(fibonacci(4 * n + 1), l2n * l2n);
    row.ratio.canonicalize();
    row.deviation_from_limit = row.ratio.get_d() - limit;
    out.rows.push_back(std::move(row));
  }
  const QuadraticNumber last(out.rows.back().ratio);
  const QuadraticNumber to_limit = last - out.limit;
  const QuadraticNumber tol(mpq_class(1, 1000));
  out.converges_to_limit = -tol < to_limit && to_limit < tol;
  const QuadraticNumber to_stated = last - out.stated_limit;
  const QuadraticNumber far(mpq_class(1, 10));
  out.differs_from_stated = to_stated < -far || to_stated > far;
  return out;
}

}  // namespace badapprox
