#pragma once

// Closed-form interior contributions and the Einstein-Hilbert split.
//
//   T(k) = (1/6) C(4,k) - C(2,k-1)
//   S(k) = sum_{j<k} (-1)^{j-k} T(j)
//   c1(4,k,a,b) = b^-2 T(k) + (b^-2 - a^-2) S(k)

#include <string>
#include <vector>

#include "ncwres/coeff_reconstruct.hpp"
#include "ncwres/errors.hpp"
#include "ncwres/exterior_algebra.hpp"
#include "ncwres/rational.hpp"

namespace ncwres {

/// Binomial coefficient, zero outside 0 <= j <= m.
inline Rational binom(int m, int j) {
  if (j < 0 || j > m || m < 0)
    return Rational(0);
  Rational r(1);
  for (int t = 1; t <= j; ++t)
    r = r * Rational(m - j + t) / Rational(t);
  return r;
}

inline Rational c1_brace(int k) { return Rational(1, 6) * binom(4, k) - binom(2, k - 1); }

inline void check_k(int k) {
  if (k < 0 || k > 4)
    throw InvalidParameter("k must lie in 0..4, got " + std::to_string(k));
}

/// Alternating sum of the braces, term by term.
inline Rational c1_alternating_sum(int k) {
  check_k(k);
  Rational s(0);
  for (int j = 0; j < k; ++j)
    s += ((k - j) % 2 == 0 ? Rational(1) : Rational(-1)) * c1_brace(j);
  return s;
}

/// Same sum from S(0) = 0, S(k+1) = -S(k) - T(k).
inline Rational c1_alternating_sum_recursive(int k) {
  check_k(k);
  Rational s(0);
  for (int j = 0; j < k; ++j)
    s = -s - c1_brace(j);
  return s;
}

inline Rational c1_coeff(int k, const Rational& a, const Rational& b) {
  Params p(a, b);
  Rational ia2 = 1 / (a * a), ib2 = 1 / (b * b);
  return ib2 * c1_brace(k) + (ib2 - ia2) * c1_alternating_sum(k);
}

/// Second path: closed braces and the recursive sum.
inline Rational c1_coeff_resummed(int k, const Rational& a, const Rational& b) {
  Params p(a, b);
  Rational ia2 = 1 / (a * a), ib2 = 1 / (b * b);
  return ib2 * (c1_brace(k) + c1_alternating_sum_recursive(k)) - ia2 * c1_alternating_sum_recursive(k);
}

inline Rational c1_sum(const Rational& a, const Rational& b) {
  Rational s(0);
  for (int k = 0; k <= 4; ++k)
    s += c1_coeff(k, a, b);
  return s;
}

enum class Pair { DDstar, DD };

inline Pair pair_of(Operator left, Operator right) {
  if (left == Operator::D && right == Operator::Dstar)
    return Pair::DDstar;
  if (left == Operator::D && right == Operator::D)
    return Pair::DD;
  throw ScopeError("no interior closed form for the pair (" + to_string(left) + ", " + to_string(right) + ")");
}

/// multiplier * product(formal_tokens).
struct FormalExpression {
  Rational multiplier;
  std::vector<std::string> formal_tokens;
  std::string text() const {
    std::string s = format_rational(multiplier);
    for (const auto& t : formal_tokens)
      s += "*" + t;
    return s;
  }
};

inline const char* kIntR = "int_M(R dvol)";

/// (D, D*): 4 pi sum_k c1 * int R; (D, D): 8 Omega_4 / (3ab) * int R.
inline FormalExpression interior_wres(Pair pair, const Rational& a, const Rational& b) {
  Params p(a, b);
  if (pair == Pair::DDstar)
    return {4 * c1_sum(a, b), {"pi", kIntR}};
  return {Rational(8, 3) / (a * b), {"Omega_4", kIntR}};
}

/// The two proportionality constants of I_Gr = I_i + I_b in terms of the residue parts.
struct GravitySplit {
  FormalExpression interior; // 1 / (64 pi c1), times Wres_i
  FormalExpression boundary; // -24 / (23 (1/a^2 + 1/b^2) pi Omega_3), times Wres_b
  bool summed_over_k = true;
  int k = -1;
};

/// Default: c1 summed over k; with `k` in 0..4 the single coefficient c1(4,k,a,b).
inline GravitySplit gravity_split(const Rational& a, const Rational& b, int k = -1) {
  Params p(a, b);
  GravitySplit g;
  Rational c1;
  if (k < 0) {
    c1 = c1_sum(a, b);
  } else {
    c1 = c1_coeff(k, a, b);
    g.summed_over_k = false;
    g.k = k;
  }
  if (sgn(c1) == 0)
    throw InvalidParameter("c1 vanishes at these parameters");
  g.interior = {1 / (64 * c1), {"1/pi"}};
  Rational s = 1 / (a * a) + 1 / (b * b);
  g.boundary = {Rational(-24) / (23 * s), {"1/pi", "1/Omega_3"}};
  return g;
}

} // namespace ncwres
