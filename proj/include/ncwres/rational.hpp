#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "ncwres/errors.hpp"

namespace ncwres {

using Rational = mpq_class;

/// Canonical text form: "p" for integers, otherwise "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string format_rational(const Rational& r) { return r.get_str(); }

/// Parses "p" or "p/q". Whitespace is not accepted; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  if (text.empty())
    throw ParseError("empty rational literal");
  std::size_t slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty())
      return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
      i = 1;
    if (i == s.size())
      return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!digits_ok(num, true) || (slash != std::string_view::npos && !digits_ok(den, false)))
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+')
    n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(slash == std::string_view::npos ? std::string("1") : std::string(den), 10);
  if (zd == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

} // namespace ncwres
