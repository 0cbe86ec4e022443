#pragma once

// Recovering the (a, b)-dependence of an engine output from exact samples.
// The output is assumed to lie in the span of a small basis of monomials in
// a, b; the first |basis| samples fix the coefficients, the rest must agree.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ncwres/errors.hpp"
#include "ncwres/matrix.hpp"
#include "ncwres/rational.hpp"
#include "ncwres/scalar_field.hpp"

namespace ncwres {

struct BasisTerm {
  std::string name;
  std::string display; // e.g. "1/a^2"
  std::function<Rational(const Rational&, const Rational&)> eval;
};

/// a^pa b^pb as a basis term.
inline BasisTerm monomial_term(std::string name, std::string display, int pa, int pb) {
  return {std::move(name), std::move(display), [pa, pb](const Rational& a, const Rational& b) {
            auto pw = [](const Rational& x, int e) {
              Rational r(1);
              Rational base = e < 0 ? Rational(1 / x) : x;
              for (int k = 0; k < (e < 0 ? -e : e); ++k)
                r *= base;
              return r;
            };
            return Rational(pw(a, pa) * pw(b, pb));
          }};
}

/// {1/a^2, 1/b^2, 1/(ab), 1}.
inline const std::vector<BasisTerm>& default_basis() {
  static const std::vector<BasisTerm> basis = {
      monomial_term("a2inv", "1/a^2", -2, 0),
      monomial_term("b2inv", "1/b^2", 0, -2),
      monomial_term("abinv", "1/(ab)", -1, -1),
      monomial_term("const", "1", 0, 0),
  };
  return basis;
}

struct Sample {
  Rational a;
  Rational b;
  GaussianRational value;
};

using SampleSet = std::vector<Sample>;

/// Parameter points: (1,1), (1,2), (2,1), (2,3) make the default basis matrix
/// invertible; later points serve as held-out checks.
inline std::vector<std::pair<Rational, Rational>> sample_points(std::size_t count) {
  static const std::vector<std::pair<Rational, Rational>> pts = {
      {Rational(1), Rational(1)},       {Rational(1), Rational(2)},       {Rational(2), Rational(1)},
      {Rational(2), Rational(3)},       {Rational(3), Rational(5)},       {Rational(-2), Rational(7, 3)},
      {Rational(5, 4), Rational(-1, 3)}, {Rational(7), Rational(2)},       {Rational(-3, 2), Rational(-5)},
      {Rational(4, 7), Rational(9, 5)}, {Rational(11, 3), Rational(-2, 9)}, {Rational(-6), Rational(1, 4)},
  };
  if (count > pts.size())
    throw InvalidParameter("at most " + std::to_string(pts.size()) + " parameter samples are available");
  return {pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(count)};
}

/// Coefficients over `basis`; throws SingularSystem or OverdeterminedError.
inline std::vector<GaussianRational> reconstruct_coeffs(const SampleSet& s, const std::vector<BasisTerm>& basis) {
  const std::size_t m = basis.size();
  if (s.size() < m)
    throw InvalidParameter("need at least " + std::to_string(m) + " samples, got " + std::to_string(s.size()));
  Matrix<GaussianRational> A(m);
  std::vector<GaussianRational> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      A(i, j) = GaussianRational(basis[j].eval(s[i].a, s[i].b));
    y[i] = s[i].value;
  }
  std::vector<GaussianRational> c = gauss_jordan_solve<SingularSystem>(A, y);
  for (std::size_t i = m; i < s.size(); ++i) {
    GaussianRational v;
    for (std::size_t j = 0; j < m; ++j)
      v += c[j] * GaussianRational(basis[j].eval(s[i].a, s[i].b));
    if (v != s[i].value)
      throw OverdeterminedError("sample at (a, b) = (" + format_rational(s[i].a) + ", " + format_rational(s[i].b) +
                                ") is " + format_gaussian(s[i].value) + " but the fitted form gives " +
                                format_gaussian(v));
  }
  return c;
}

/// Sample count used by default: four to fit, two held out.
inline constexpr std::size_t kDefaultParameterSamples = 6;

/// Evaluates f at `count` parameter points.
template <class F>
SampleSet sample(F&& f, std::size_t count = kDefaultParameterSamples) {
  SampleSet s;
  for (auto& [a, b] : sample_points(count))
    s.push_back({a, b, GaussianRational(f(a, b))});
  return s;
}

/// lambda = c0/a^2 + c1/b^2 + c2/(ab) + c3, a multiple of the formal `units`.
struct BoundaryValue {
  std::array<GaussianRational, 4> coeffs{};
  std::string units;

  GaussianRational& a2inv() { return coeffs[0]; }
  GaussianRational& b2inv() { return coeffs[1]; }
  GaussianRational& abinv() { return coeffs[2]; }
  GaussianRational& constant() { return coeffs[3]; }
  const GaussianRational& a2inv() const { return coeffs[0]; }
  const GaussianRational& b2inv() const { return coeffs[1]; }
  const GaussianRational& abinv() const { return coeffs[2]; }
  const GaussianRational& constant() const { return coeffs[3]; }

  static BoundaryValue make(GaussianRational a2, GaussianRational b2, GaussianRational ab, GaussianRational c,
                            std::string units = {}) {
    BoundaryValue v;
    v.coeffs = {std::move(a2), std::move(b2), std::move(ab), std::move(c)};
    v.units = std::move(units);
    return v;
  }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero())
        return false;
    return true;
  }

  GaussianRational evaluate(const Rational& a, const Rational& b) const {
    GaussianRational v;
    const auto& basis = default_basis();
    for (std::size_t j = 0; j < 4; ++j)
      if (!coeffs[j].is_zero())
        v += coeffs[j] * GaussianRational(basis[j].eval(a, b));
    return v;
  }

  /// Image under a <-> b.
  BoundaryValue swapped() const {
    BoundaryValue v = *this;
    std::swap(v.coeffs[0], v.coeffs[1]);
    return v;
  }

  BoundaryValue& operator+=(const BoundaryValue& o) {
    for (std::size_t j = 0; j < 4; ++j)
      coeffs[j] += o.coeffs[j];
    if (units.empty())
      units = o.units;
    return *this;
  }
  friend BoundaryValue operator+(BoundaryValue x, const BoundaryValue& y) { return x += y; }
  friend BoundaryValue operator-(BoundaryValue x, const BoundaryValue& y) {
    for (std::size_t j = 0; j < 4; ++j)
      x.coeffs[j] -= y.coeffs[j];
    return x;
  }
  friend BoundaryValue operator*(const GaussianRational& s, BoundaryValue x) {
    for (auto& c : x.coeffs)
      c = s * c;
    return x;
  }
  /// Compares coefficients only.
  friend bool operator==(const BoundaryValue& x, const BoundaryValue& y) { return x.coeffs == y.coeffs; }
  friend bool operator!=(const BoundaryValue& x, const BoundaryValue& y) { return !(x == y); }
};

/// Human-readable form, e.g. "(-1/2)*1/a^2 + (-1)*1/b^2".
inline std::string format_boundary_value(const BoundaryValue& v) {
  std::string s;
  const auto& basis = default_basis();
  for (std::size_t j = 0; j < 4; ++j) {
    if (v.coeffs[j].is_zero())
      continue;
    if (!s.empty())
      s += " + ";
    std::string c = "(" + format_gaussian(v.coeffs[j]) + ")";
    s += j == 3 ? c : c + "*" + basis[j].display;
  }
  return s.empty() ? "0" : s;
}

/// Reconstruction over the default basis.
inline BoundaryValue reconstruct(const SampleSet& s, std::string units = {}) {
  auto c = reconstruct_coeffs(s, default_basis());
  return BoundaryValue::make(c[0], c[1], c[2], c[3], std::move(units));
}

} // namespace ncwres
