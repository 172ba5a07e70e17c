#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "badapprox/cf_core.hpp"
#include "badapprox/errors.hpp"
#include "badapprox/kronecker.hpp"
#include "badapprox/oracle.hpp"
#include "badapprox/serialize.hpp"
#include "badapprox/sturmian.hpp"
#include "badapprox/three_gap.hpp"

namespace badapprox::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string theta = "golden";
  Quotient b = 1;
  std::uint64_t n = 0;
  std::string beta = "1/2";
  std::uint64_t rmax = 10;
  std::uint64_t nmax = 8;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out_path;
  int digits = 10;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CFSpec parse_theta(const std::string& text) {
  if (text == "golden") return CFSpec::golden();
  if (text == "sqrt2") return CFSpec::sqrt2();
  if (text.rfind("extremal:", 0) == 0) {
    const std::string arg = text.substr(9);
    std::size_t used = 0;
    long long b = 0;
    try {
      b = std::stoll(arg, &used);
    } catch (const std::exception&) {
      throw UsageError("bad extremal preset: " + text);
    }
    if (used != arg.size()) throw UsageError("bad extremal preset: " + text);
    if (b < 1) throw DomainError("extremal preset needs B >= 1");
    return CFSpec::extremal(b);
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception&) {
    throw UsageError("theta is neither a preset nor valid JSON: " + text);
  }
  try {
    return cfspec_from_json(doc);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

mpq_class parse_rational(const std::string& text) {
  mpq_class x;
  if (text.empty() || x.set_str(text, 10) != 0) throw UsageError("bad rational: " + text);
  if (x.get_den() == 0) throw UsageError("zero denominator: " + text);
  x.canonicalize();
  return x;
}

json form_json(const LinearForm& f) {
  return {{"coeff", json::parse(f.coeff.get_str())}, {"offset", json::parse(f.offset.get_str())}};
}

struct Report {
  std::string text;
  bool verified = true;
};

Report dump(json doc, bool verified) { return {doc.dump(2) + "\n", verified}; }

Report cmd_gaps(const Config& c) {
  const CFSpec cf = parse_theta(c.theta);
  if (c.n < 1) throw DomainError("gaps needs --n >= 1");
  const GapSet g = gap_set(cf, c.n);
  const ThreeGapCheck check = verify_three_gap(g);
  bool ok = check.all();
  std::optional<bool> below_f;
  if (!cf.length()) {
    below_f = g.certified_product().upper() < f_closed(cf.bound());
    ok = ok && *below_f;
  }
  json doc = to_json(g, c.digits);
  if (c.format == "csv") {
    std::ostringstream s;
    s << "length,multiplicity\n";
    for (const json& gap : doc["gaps"]) {
      s << gap["length"].get<std::string>() << ',' << gap["multiplicity"] << '\n';
    }
    return {s.str(), ok};
  }
  doc["theta"] = to_json(cf);
  doc["three_gap"] = check.all();
  if (below_f) doc["below_f"] = *below_f;
  return dump(std::move(doc), ok);
}

Report cmd_regime(const Config& c) {
  const CFSpec cf = parse_theta(c.theta);
  const RegimeTag tag = classify_regime(cf, c.n);
  const bool match = gaps_match_regime(gap_set(cf, c.n), tag);
  json predicted = json::array();
  for (const LinearForm& f : tag.predicted) predicted.push_back(form_json(f));
  return dump({{"n", c.n},
               {"k", tag.k},
               {"l", tag.l},
               {"bracket", to_string(tag.bracket)},
               {"q_k", json::parse(tag.q_k.get_str())},
               {"q_km1", json::parse(tag.q_km1.get_str())},
               {"predicted", std::move(predicted)},
               {"matches_gap_set", match}},
              match);
}

Report cmd_fb(const Config& c) {
  if (c.b < 1) throw DomainError("fb needs --b >= 1");
  const QuadraticNumber f = f_closed(c.b);
  const FBounds fb = f_bounds(c.b);
  const bool ok = QuadraticNumber(fb.lower) <= f && f <= fb.upper;
  return dump({{"b", c.b},
               {"f", f_closed_symbolic(c.b)},
               {"decimal", decimal_number(f, c.digits)},
               {"lower", decimal_number(fb.lower, c.digits)},
               {"upper", decimal_number(fb.upper, c.digits)}},
              ok);
}

json witness_json(const ExtremalWitness& w, int digits) {
  return {{"b", w.bound},
          {"index", w.index},
          {"theta", to_json(w.theta)},
          {"n", w.n},
          {"predicted_form", form_json(w.predicted_form)},
          {"predicted_gap", decimal_number(w.predicted_gap.center, digits)},
          {"predicted_in_gap_set", w.predicted_in_gap_set},
          {"predicted_is_largest", w.predicted_is_largest},
          {"h", decimal_number(w.largest_gap, digits)},
          {"product_nh", decimal_number(w.product, digits)},
          {"f", decimal_number(f_closed(w.bound), digits)},
          {"below_f", w.below_f}};
}

Report cmd_extremal(const Config& c) {
  if (c.b < 1 || c.n < 1) throw DomainError("extremal needs --b >= 1 and --n >= 1");
  const ExtremalWitness w = extremal_witness(c.b, static_cast<unsigned>(c.n));
  return dump(witness_json(w, c.digits), w.below_f);
}

Report cmd_kron(const Config& c) {
  const CFSpec cf = parse_theta(c.theta);
  const KroneckerSolution s = solve(cf, parse_rational(c.beta), c.n);
  json doc = to_json(s, c.digits);
  return dump(std::move(doc), s.within_bound);
}

Report cmd_sturmian(const Config& c) {
  const CFSpec cf = parse_theta(c.theta);
  const SturmianSeq seq = generate(cf, c.n);
  if (c.format == "csv") {
    std::ostringstream s;
    s << "i,bit\n";
    for (std::size_t i = 0; i < seq.length; ++i) s << i << ',' << (seq[i] ? 1 : 0) << '\n';
    return {s.str(), true};
  }
  std::string bits(seq.length, '0');
  for (std::size_t i = 0; i < seq.length; ++i) bits[i] = seq[i] ? '1' : '0';
  return dump({{"theta", to_json(cf)}, {"length", seq.length}, {"bits", bits}, {"ones", seq.count_ones()}}, true);
}

Report cmd_diversity(const Config& c) {
  const CFSpec cf = parse_theta(c.theta);
  const std::vector<DiversityRow> rows = diversity_scan(cf, c.b, c.rmax);
  bool ok = true;
  for (const DiversityRow& row : rows) ok = ok && row.pass;
  if (c.format == "csv") return {diversity_csv(rows), ok};
  json arr = json::array();
  for (const DiversityRow& row : rows) {
    arr.push_back({{"r", row.r},
                   {"max_agreement", row.max_agreement},
                   {"a", row.arg_a},
                   {"b", row.arg_b},
                   {"saturated", row.saturated},
                   {"bound", json::parse(row.bound.get_str())},
                   {"pass", row.pass}});
  }
  return dump({{"theta", to_json(cf)}, {"b", c.b}, {"rows", std::move(arr)}}, ok);
}

Report cmd_witness(const Config& c) {
  const unsigned n = static_cast<unsigned>(c.n == 0 ? 2 : c.n);
  const LowerBoundWitness w = lower_bound_witness(n);
  const RatioReport ratio = ratio_report(2, static_cast<unsigned>(std::max<std::uint64_t>(c.nmax, 2)));
  json rows = json::array();
  for (const RatioRow& row : ratio.rows) {
    rows.push_back({{"n", row.n},
                    {"ratio", decimal_number(row.ratio, c.digits)},
                    {"deviation_from_limit", row.deviation_from_limit}});
  }
  const std::string match = w.matches_statement ? "statement" : w.matches_proof ? "proof" : "neither";
  const bool bits_ok = w.disagreement_bits == std::pair<int, int>{0, 1};
  const bool lower_ok = w.witness.k_star + 2 >= w.statement_k;
  const bool ok = bits_ok && lower_ok && w.crossing_brackets && w.crossing_closed_forms && w.lower_estimate &&
                  w.upper_estimate && w.product_identity;
  json doc{{"n", n},
           {"r", w.witness.r},
           {"a", w.witness.a},
           {"b", w.witness.b},
           {"k_star", w.witness.k_star},
           {"statement_k", w.statement_k},
           {"proof_k", w.proof_k},
           {"matches", match},
           {"disagreement_bits", {w.disagreement_bits.first, w.disagreement_bits.second}},
           {"crossing", {w.crossing.first, w.crossing.second}},
           {"crossing_k", w.crossing_k},
           {"crossing_brackets", w.crossing_brackets},
           {"crossing_closed_forms", w.crossing_closed_forms},
           {"lower_estimate", w.lower_estimate},
           {"upper_estimate", w.upper_estimate},
           {"product_identity", w.product_identity},
           {"ratio",
            {{"rows", std::move(rows)},
             {"limit", ratio.limit.to_string()},
             {"limit_decimal", decimal_number(ratio.limit, c.digits)},
             {"stated_limit", ratio.stated_limit.to_string()},
             {"stated_limit_decimal", decimal_number(ratio.stated_limit, c.digits)},
             {"converges_to_limit", ratio.converges_to_limit},
             {"differs_from_stated", ratio.differs_from_stated}}}};
  return dump(std::move(doc), ok && ratio.converges_to_limit);
}

std::string grid_csv(const Grid<QuadraticNumber>& g, int digits) {
  std::ostringstream s;
  for (std::size_t i = 0; i < g.rows; ++i) {
    for (std::size_t j = 0; j < g.cols; ++j) s << (j ? "," : "") << g(i, j).to_decimal(digits);
    s << '\n';
  }
  return s.str();
}

json grid_json(const Grid<QuadraticNumber>& g, int digits) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols; ++j) row.push_back(g(i, j).to_decimal(digits));
    rows.push_back(std::move(row));
  }
  return rows;
}

Report cmd_arrays(const Config& c) {
  const unsigned n = static_cast<unsigned>(c.n == 0 ? 2 : c.n);
  const ABArrays arr = ab_arrays(n);
  const bool ok = verify_ab_arrays(arr).all(false) && crossing_pairs(arr).size() == 1;
  if (c.format == "csv") return {"# A\n" + grid_csv(arr.a, c.digits) + "# B\n" + grid_csv(arr.b, c.digits), ok};
  return dump({{"n", n},
               {"rows", arr.a.rows},
               {"cols", arr.a.cols},
               {"a", grid_json(arr.a, c.digits)},
               {"b", grid_json(arr.b, c.digits)},
               {"d", decimal_number(arr.d, c.digits)},
               {"d_prime", decimal_number(arr.d_prime, c.digits)},
               {"d_second", decimal_number(arr.d_second, c.digits)}},
              ok);
}

Report cmd_verify(const Config& c) {
  const std::size_t cases = c.n == 0 ? 200 : c.n;
  std::ostringstream s;
  bool ok = true;
  for (const oracle::OracleReport& r : oracle::run_equivalence(cases, c.seed)) {
    s << to_json(r).dump() << '\n';
    ok = ok && r.agree;
  }
  return {s.str(), ok};
}

Report cmd_convergence(const Config& c) {
  if (c.nmax < 1 || c.b < 1) throw DomainError("convergence needs --b >= 1 and --nmax >= 1");
  const QuadraticNumber f = f_closed(c.b);
  std::ostringstream s;
  json rows = json::array();
  bool ok = true;
  s << "n,N,NH,f_minus_NH,f\n";
  for (unsigned i = 1; i <= c.nmax; ++i) {
    const ExtremalWitness w = extremal_witness(c.b, i);
    ok = ok && w.below_f;
    const QuadraticNumber gap = f - QuadraticNumber(w.product);
    s << i << ',' << w.n << ',' << to_decimal(w.product, c.digits) << ',' << gap.to_decimal(c.digits) << ','
      << f.to_decimal(c.digits) << '\n';
    rows.push_back({{"n", i},
                    {"N", w.n},
                    {"NH", decimal_number(w.product, c.digits)},
                    {"f_minus_NH", decimal_number(gap, c.digits)},
                    {"f", decimal_number(f, c.digits)}});
  }
  if (c.format == "csv") return {s.str(), ok};
  return dump({{"b", c.b}, {"rows", std::move(rows)}}, ok);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Badly approximable numbers: gaps, Kronecker solutions and Sturmian diversity"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--theta", c.theta, "preset (golden, sqrt2, extremal:B) or JSON {a0, prefix, period}");
  app.add_option("--b", c.b, "partial quotient bound B");
  app.add_option("--n", c.n, "N, index n, sequence length or case count");
  app.add_option("--beta", c.beta, "rational target p/q");
  app.add_option("--rmax", c.rmax, "largest modulus r");
  app.add_option("--nmax", c.nmax, "largest index");
  app.add_option("--seed", c.seed, "random seed for verify");
  app.add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out_path, "write the report here instead of stdout");
  app.add_option("--precision-digits", c.digits, "significant digits of decimal output")
      ->check(CLI::Range(1, 1000));

  using Handler = Report (*)(const Config&);
  const std::pair<const char*, Handler> commands[] = {
      {"gaps", cmd_gaps},         {"regime", cmd_regime},       {"fb", cmd_fb},
      {"extremal", cmd_extremal}, {"kron", cmd_kron},           {"sturmian", cmd_sturmian},
      {"diversity", cmd_diversity}, {"witness", cmd_witness},   {"arrays", cmd_arrays},
      {"verify", cmd_verify},     {"convergence", cmd_convergence}};
  for (const auto& [name, handler] : commands) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  Handler handler = nullptr;
  for (const auto& [name, h] : commands) {
    if (app.got_subcommand(name)) handler = h;
  }
  if (app.got_subcommand("diversity") && app.get_option("--format")->count() == 0) c.format = "csv";
  if (app.got_subcommand("convergence") && app.get_option("--format")->count() == 0) c.format = "csv";

  Report report;
  try {
    report = handler(c);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const LengthError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  }

  if (c.out_path.empty()) {
    out << report.text;
  } else {
    std::ofstream file(c.out_path);
    if (!file) {
      err << "cannot open " << c.out_path << '\n';
      return kExitUsage;
    }
    file << report.text;
  }
  if (!report.verified) {
    err << "verification failed\n";
    return kExitVerification;
  }
  return kExitOk;
}

}  // namespace badapprox::cli
