#include "badapprox/serialize.hpp"

#include <sstream>

#include "badapprox/errors.hpp"

namespace badapprox {

using nlohmann::json;

json to_json(const CFSpec& cf) {
  return json{{"a0", cf.a0()}, {"prefix", cf.prefix()}, {"period", cf.period()}};
}

CFSpec cfspec_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("theta JSON must be an object");
  auto quotients = [&](const char* key) {
    std::vector<Quotient> out;
    if (!doc.contains(key)) return out;
    const json& arr = doc.at(key);
    if (!arr.is_array()) throw ParseError(std::string("theta JSON: '") + key + "' must be an array");
    for (const json& x : arr) {
      if (!x.is_number_integer()) throw ParseError(std::string("theta JSON: '") + key + "' holds a non-integer");
      out.push_back(x.get<Quotient>());
    }
    return out;
  };
  Quotient a0 = 0;
  if (doc.contains("a0")) {
    if (!doc.at("a0").is_number_integer()) throw ParseError("theta JSON: 'a0' must be an integer");
    a0 = doc.at("a0").get<Quotient>();
  }
  return {a0, quotients("prefix"), quotients("period")};
}

json decimal_number(const mpq_class& x, int digits) { return json::parse(to_decimal(x, digits)); }

json decimal_number(const QuadraticNumber& x, int digits) { return json::parse(x.to_decimal(digits)); }

json to_json(const GapSet& g, int digits) {
  const mpz_class big_n(static_cast<unsigned long>(g.n));
  const mpq_class theta = eval_theta(g.theta, report_eps() / (big_n + 1)).center;
  json points = json::array();
  for (const GapPoint& pt : g.points) {
    points.push_back(to_decimal(LinearForm{mpz_class(static_cast<long>(pt.n)), pt.floor}.at(theta), digits));
  }
  json gaps = json::array();
  for (const GapLength& gap : g.gaps) {
    gaps.push_back({{"length", to_decimal(gap.form.at(theta), digits)}, {"multiplicity", gap.multiplicity}});
  }
  const mpq_class product = g.certified_product().center;
  return json{{"n", g.n},
              {"k_surrogate", g.surrogate.depth},
              {"points", std::move(points)},
              {"gaps", std::move(gaps)},
              {"h", to_decimal(product / big_n, digits)},
              {"product_nh", to_decimal(product, digits)}};
}

json to_json(const KroneckerSolution& s, int digits) {
  return json{{"n", s.n},
              {"p", json::parse(s.p.get_str())},
              {"error", decimal_number(s.achieved_error, digits)},
              {"bound", decimal_number(s.bound, digits)},
              {"bound_exact", s.bound.to_string()},
              {"legacy_bound", json::parse(s.legacy_bound.get_str())},
              {"within_bound", s.within_bound}};
}

json to_json(const oracle::OracleReport& r) {
  return json{{"case_id", r.case_id},
              {"reference", r.reference},
              {"candidate", r.candidate},
              {"agree", r.agree},
              {"max_deviation", r.max_deviation}};
}

std::string diversity_csv(const std::vector<DiversityRow>& rows) {
  std::ostringstream out;
  out << "r,max_agreement,bound,pass\n";
  for (const DiversityRow& row : rows) {
    out << row.r << ',' << (row.saturated ? ">=" : "") << row.max_agreement << ',' << row.bound.get_str() << ','
        << (row.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace badapprox
