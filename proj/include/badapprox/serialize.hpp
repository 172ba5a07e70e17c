#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "badapprox/cf_core.hpp"
#include "badapprox/kronecker.hpp"
#include "badapprox/oracle.hpp"
#include "badapprox/sturmian.hpp"
#include "badapprox/three_gap.hpp"

namespace badapprox {

/// {"a0": int, "prefix": [int], "period": [int]}
nlohmann::json to_json(const CFSpec& cf);
/// Throws ParseError on a malformed document, DomainError on invalid quotients.
CFSpec cfspec_from_json(const nlohmann::json& doc);

/// A decimal rendering as a JSON number (10 significant digits by default).
nlohmann::json decimal_number(const mpq_class& x, int digits = 10);
nlohmann::json decimal_number(const QuadraticNumber& x, int digits = 10);

/// {n, k_surrogate, points, gaps: [{length, multiplicity}], h, product_nh}
nlohmann::json to_json(const GapSet& gaps, int digits = 10);

/// {n, p, error, bound, legacy_bound, within_bound}
nlohmann::json to_json(const KroneckerSolution& solution, int digits = 10);

nlohmann::json to_json(const oracle::OracleReport& report);

/// "r,max_agreement,bound,pass" header plus one line per row.
std::string diversity_csv(const std::vector<DiversityRow>& rows);

}  // namespace badapprox
