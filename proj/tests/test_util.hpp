#pragma once

#include <string>

#include <gmpxx.h>

namespace testutil {

inline mpq_class pow10_inv(int e) { return mpq_class(mpz_class(1), mpz_class("1" + std::string(e, '0'), 10)); }

/// Exact rational from a plain decimal literal such as "0.236068".
inline mpq_class dec(const std::string& s) {
  const std::size_t dot = s.find('.');
  if (dot == std::string::npos) return mpq_class(mpz_class(s, 10));
  const std::string frac = s.substr(dot + 1);
  mpq_class x(mpz_class(s.substr(0, dot) + frac, 10), mpz_class("1" + std::string(frac.size(), '0'), 10));
  x.canonicalize();
  return x;
}

}  // namespace testutil
