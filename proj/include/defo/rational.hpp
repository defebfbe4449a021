#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "defo/errors.hpp"

namespace defo {

using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "p", "-p", "p/q" with q > 0. Rejects anything else, including non-reduced zero denominators.
inline Rational parse_rational(const std::string& s) {
  auto digits = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) throw ParseError("bad rational: '" + s + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// n/d in lowest terms. The two-argument mpq constructor does not canonicalize.
inline Rational ratio(long n, long d) {
  if (d == 0) throw PreconditionError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational factorial_inverse(unsigned n) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(mpz_class(1), f);
}

}  // namespace defo
