#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include "tcfp/errors.hpp"

namespace tcfp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: lowest terms, "p" or "p/q". With explicit_sign a
/// leading '+' is written for nonnegative values.
inline std::string to_string(const Rational& x, bool explicit_sign = false) {
  Rational c = x;
  c.canonicalize();
  std::string s = c.get_num().get_str();
  if (c.get_den() != 1) s += "/" + c.get_den().get_str();
  if (explicit_sign && sgn(c) >= 0) s = "+" + s;
  return s;
}

/// Parses "p", "+p", "-p", "p/q". Rejects zero denominators and junk.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  std::string body = s;
  if (body[0] == '+') body = body.substr(1);
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = body.find('/');
  std::string num = body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-') throw ParseError("malformed rational '" + s + "'");
  const Integer d{den};
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r{Integer{num}, d};
  r.canonicalize();
  return r;
}

inline long double to_long_double(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long double>(z.get_si());
  return std::strtold(z.get_str().c_str(), nullptr);
}

inline long double to_long_double(const Rational& q) {
  if (q.get_den() == 1) return to_long_double(q.get_num());
  return to_long_double(q.get_num()) / to_long_double(q.get_den());
}

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline Integer integer_pow(long base, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(base)), e);
  if (base < 0 && (e % 2 == 1)) r = -r;
  return r;
}

}  // namespace tcfp
