#include "badapprox/oracle.hpp"

#include <algorithm>

#include "badapprox/errors.hpp"
#include "badapprox/kronecker.hpp"
#include "badapprox/sturmian.hpp"
#include "badapprox/three_gap.hpp"

namespace badapprox::oracle {

namespace {

Decimal frac(const Decimal& x) { return x - floor(x); }

std::string str(const Decimal& x) { return x.str(45, std::ios_base::scientific); }

const Decimal& gap_tolerance() {
  static const Decimal tol("1e-40");
  return tol;
}

}  // namespace

Decimal decimal_theta(const CFSpec& cf, unsigned depth) {
  std::size_t last = depth;
  if (const auto len = cf.length()) last = std::min<std::size_t>(last, *len - 1);
  Decimal x = 0;
  for (std::size_t i = last; i >= 1; --i) x = 1 / (Decimal(cf.quotient(i)) + x);
  return Decimal(cf.a0()) + x;
}

Decimal to_decimal(const mpq_class& x) {
  return Decimal(x.get_num().get_str()) / Decimal(x.get_den().get_str());
}

std::vector<BruteGap> brute_gap_set(const Decimal& theta, std::uint64_t n, const Decimal& merge_tol) {
  std::vector<Decimal> pts;
  pts.reserve(n + 2);
  pts.emplace_back(0);
  for (std::uint64_t i = 1; i <= n; ++i) pts.push_back(frac(theta * i));
  pts.emplace_back(1);
  std::sort(pts.begin(), pts.end());
  std::vector<Decimal> gaps;
  gaps.reserve(n + 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) gaps.push_back(pts[i + 1] - pts[i]);
  std::sort(gaps.begin(), gaps.end());
  std::vector<BruteGap> out;
  for (const Decimal& g : gaps) {
    if (!out.empty() && g - out.back().length <= merge_tol) {
      ++out.back().multiplicity;
    } else {
      out.push_back({g, 1});
    }
  }
  return out;
}

BruteKronecker brute_kronecker(const Decimal& theta, const Decimal& beta, std::uint64_t n) {
  BruteKronecker best;
  best.n = 0;
  best.p = 0;
  best.error = abs(beta);
  Decimal best_point = 0;
  auto consider = [&](std::int64_t k, std::int64_t p) {
    const Decimal point = theta * k - p;
    const Decimal err = abs(point - beta);
    // Ties go to the smaller point.
    if (err < best.error || (err == best.error && point < best_point)) {
      best = {k, p, err};
      best_point = point;
    }
  };
  consider(0, -1);
  for (std::uint64_t k = 1; k <= n; ++k) {
    const auto fl = static_cast<std::int64_t>(floor(theta * k));
    consider(static_cast<std::int64_t>(k), fl);
    consider(static_cast<std::int64_t>(k), fl + 1);
    consider(static_cast<std::int64_t>(k), fl - 1);
  }
  return best;
}

std::vector<std::uint8_t> brute_sturmian_bits(const Decimal& theta, std::size_t length) {
  std::vector<std::uint8_t> bits(length);
  Decimal prev = floor(theta);
  for (std::size_t i = 0; i < length; ++i) {
    const Decimal next = floor(theta * (i + 2));
    bits[i] = next != prev ? 1 : 0;
    prev = next;
  }
  return bits;
}

std::optional<std::uint64_t> brute_agreement(std::span<const std::uint8_t> bits, std::uint64_t r,
                                             std::uint64_t a, std::uint64_t b, std::uint64_t max_k) {
  if (!(a < b && b < r)) throw DomainError("brute_agreement: need 0 <= a < b < r");
  for (std::uint64_t k = 0; k < max_k; ++k) {
    if (r * k + b >= bits.size()) throw LengthError(r * (max_k - 1) + b + 1, bits.size());
    if (bits[r * k + a] != bits[r * k + b]) return k;
  }
  return std::nullopt;
}

CFSpec random_badly_approximable(std::mt19937_64& rng, Quotient bound) {
  std::uniform_int_distribution<Quotient> quotient(1, bound);
  std::uniform_int_distribution<int> prefix_len(0, 4);
  std::uniform_int_distribution<int> period_len(1, 4);
  std::vector<Quotient> prefix(static_cast<std::size_t>(prefix_len(rng)));
  std::vector<Quotient> period(static_cast<std::size_t>(period_len(rng)));
  for (auto& a : prefix) a = quotient(rng);
  for (auto& a : period) a = quotient(rng);
  // Make sure the bound is attained somewhere.
  period[0] = bound;
  return {0, std::move(prefix), std::move(period)};
}

OracleReport check_gap_set(const CFSpec& cf, std::uint64_t n) {
  OracleReport report;
  report.case_id = "gap_set N=" + std::to_string(n);
  const GapSet main = gap_set(cf, n);
  const std::vector<BruteGap> ref = brute_gap_set(decimal_theta(cf), n);

  const mpq_class eps(mpz_class(1), mpz_class("1" + std::string(48, '0')) * mpz_class(static_cast<unsigned long>(n)));
  const CertifiedValue theta = eval_theta(cf, eps);
  bool agree = main.gaps.size() == ref.size();
  Decimal worst = 0;
  for (std::size_t i = 0; i < main.gaps.size(); ++i) {
    const GapLength& g = main.gaps[i];
    const mpq_class true_len = g.form.coeff * theta.center - g.form.offset;
    report.candidate += (i ? " " : "") + str(to_decimal(true_len)) + "x" + std::to_string(g.multiplicity);
    if (i < ref.size()) {
      worst = std::max(worst, Decimal(abs(to_decimal(true_len) - ref[i].length)));
      agree = agree && g.multiplicity == ref[i].multiplicity;
    }
  }
  for (std::size_t i = 0; i < ref.size(); ++i) {
    report.reference += (i ? " " : "") + str(ref[i].length) + "x" + std::to_string(ref[i].multiplicity);
  }
  report.agree = agree && worst <= gap_tolerance();
  report.max_deviation = str(worst);
  return report;
}

OracleReport check_kronecker(const CFSpec& cf, const mpq_class& beta, std::uint64_t n) {
  OracleReport report;
  report.case_id = "kronecker beta=" + beta.get_str() + " N=" + std::to_string(n);
  const KroneckerSolution main = solve(cf, beta, n);
  const BruteKronecker ref = brute_kronecker(decimal_theta(cf), to_decimal(beta), n);
  report.candidate = "(" + std::to_string(main.n) + "," + main.p.get_str() + ")";
  report.reference = "(" + std::to_string(ref.n) + "," + std::to_string(ref.p) + ")";
  const Decimal main_error = abs(decimal_theta(cf) * main.n - Decimal(main.p.get_str()) - to_decimal(beta));
  report.max_deviation = str(abs(main_error - ref.error));
  report.agree = main.n == ref.n && main.p == ref.p;
  return report;
}

OracleReport check_agreement(const CFSpec& cf, std::uint64_t r, std::uint64_t a, std::uint64_t b) {
  OracleReport report;
  report.case_id = "agreement r=" + std::to_string(r) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
  constexpr std::uint64_t kMaxK = 4000;
  const SturmianSeq seq = generate(cf, r * kMaxK + r);
  const auto main = agreement(seq, r, a, b, kMaxK);
  // The oracle only needs bits up to the candidate's answer (plus one block).
  const std::uint64_t horizon = main ? *main + 1 : kMaxK;
  const std::vector<std::uint8_t> bits = brute_sturmian_bits(decimal_theta(cf), r * horizon + r);
  const auto ref = brute_agreement(bits, r, a, b, horizon);
  report.candidate = main ? std::to_string(*main) : ">=" + std::to_string(kMaxK);
  report.reference = ref ? std::to_string(*ref) : ">=" + std::to_string(horizon);
  report.agree = main == ref;
  report.max_deviation = report.agree ? "0" : "mismatch";
  return report;
}

std::vector<OracleReport> run_equivalence(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Quotient> bound(1, 10);
  std::uniform_int_distribution<std::uint64_t> size(1, 2000);
  std::uniform_int_distribution<long> den(2, 1'000'000);
  std::vector<OracleReport> out;
  out.reserve(3 * cases);
  for (std::size_t i = 0; i < cases; ++i) {
    const CFSpec cf = random_badly_approximable(rng, bound(rng));
    out.push_back(check_gap_set(cf, size(rng)));
  }
  for (std::size_t i = 0; i < cases; ++i) {
    const CFSpec cf = random_badly_approximable(rng, bound(rng));
    const long d = den(rng);
    const long num = std::uniform_int_distribution<long>(0, d - 1)(rng);
    mpq_class beta(num, d);
    beta.canonicalize();
    out.push_back(check_kronecker(cf, beta, size(rng)));
  }
  std::uniform_int_distribution<std::uint64_t> modulus(2, 12);
  for (std::size_t i = 0; i < cases; ++i) {
    const CFSpec cf = random_badly_approximable(rng, std::uniform_int_distribution<Quotient>(1, 5)(rng));
    const std::uint64_t r = modulus(rng);
    const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, r - 2)(rng);
    const std::uint64_t b = std::uniform_int_distribution<std::uint64_t>(a + 1, r - 1)(rng);
    out.push_back(check_agreement(cf, r, a, b));
  }
  return out;
}

}  // namespace badapprox::oracle
