#pragma once

// Lambda^*(R^n) for n in {3, 4} with exterior and interior multiplication,
// the Clifford actions c = eps - iota, c^ = eps + iota and their nonminimal
// twists c~ = a eps - b iota (operator D) and c- = b eps - a iota (operator D*).

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "ncwres/errors.hpp"
#include "ncwres/matrix.hpp"
#include "ncwres/rational.hpp"
#include "ncwres/scalar_field.hpp"

namespace ncwres {

using Endo = Matrix<ScalarRing>;

/// Strictly increasing subset of {1, ..., n}.
struct Blade {
  std::vector<int> indices;
  std::uint32_t mask() const {
    std::uint32_t m = 0;
    for (int i : indices)
      m |= 1u << (i - 1);
    return m;
  }
  int grade() const { return static_cast<int>(indices.size()); }
};

enum class CovectorRole { Tangential, Normal, General };

struct Covector {
  std::vector<Rational> components;
  CovectorRole role = CovectorRole::General;

  int dim() const { return static_cast<int>(components.size()); }

  Rational norm2() const {
    Rational s(0);
    for (const auto& c : components)
      s += c * c;
    return s;
  }

  /// e_k, 1-based.
  static Covector basis(int n, int k) {
    if (k < 1 || k > n)
      throw InvalidParameter("basis index out of range");
    Covector v;
    v.components.assign(static_cast<std::size_t>(n), Rational(0));
    v.components[static_cast<std::size_t>(k - 1)] = 1;
    v.role = k == n ? CovectorRole::Normal : CovectorRole::General;
    return v;
  }
  /// dx_n = e_n.
  static Covector normal(int n) { return basis(n, n); }

  /// A covector in the boundary directions; `tangential_components.size()` must be n - 1.
  static Covector tangential(int n, std::vector<Rational> tangential_components) {
    if (static_cast<int>(tangential_components.size()) != n - 1)
      throw DimensionMismatch("tangential covector needs n-1 components");
    Covector v;
    v.components = std::move(tangential_components);
    v.components.emplace_back(0);
    v.role = CovectorRole::Tangential;
    return v;
  }

  Covector operator+(const Covector& o) const {
    if (o.dim() != dim())
      throw DimensionMismatch("covector dimensions differ");
    Covector r = *this;
    for (std::size_t k = 0; k < components.size(); ++k)
      r.components[k] += o.components[k];
    r.role = CovectorRole::General;
    return r;
  }
  friend Covector operator*(const Rational& s, const Covector& v) {
    Covector r = v;
    for (auto& c : r.components)
      c *= s;
    return r;
  }
};

inline Rational pairing(const Covector& u, const Covector& v) {
  if (u.dim() != v.dim())
    throw DimensionMismatch("covector dimensions differ");
  Rational s(0);
  for (std::size_t k = 0; k < u.components.size(); ++k)
    s += u.components[k] * v.components[k];
  return s;
}

/// Rational unit covector tangent to the boundary, by inverse stereographic projection.
/// Index 0 is (1, 0, ..., 0); distinct indices give distinct directions.
inline Covector unit_tangential(int n, int index) {
  if (n != 3 && n != 4)
    throw ScopeError("only n = 3 and n = 4 are supported");
  if (index == 0) {
    std::vector<Rational> t(static_cast<std::size_t>(n - 1), Rational(0));
    t[0] = 1;
    return Covector::tangential(n, std::move(t));
  }
  if (n == 3) {
    // ((1 - t^2), 2t) / (1 + t^2) for t = 1/2, 1/3, 2/3, -1/2, ...
    static const int num[] = {1, 1, 2, -1, 3, -2, 1, 4, -3, 5, 2, -5};
    static const int den[] = {2, 3, 3, 2, 4, 5, 7, 9, 7, 8, 9, 11};
    int k = (index - 1) % 12;
    Rational t(num[k], den[k]);
    t.canonicalize();
    t += index > 12 ? Rational(index / 12) : Rational(0);
    Rational d = 1 + t * t;
    return Covector::tangential(n, {(1 - t * t) / d, 2 * t / d});
  }
  // (2s, 2t, 1 - s^2 - t^2) / (1 + s^2 + t^2)
  static const int sn[] = {1, 1, 0, 1, -1, 2, 1, 1, -2, 3, 1, -1};
  static const int sd[] = {1, 2, 1, 3, 2, 3, 4, 1, 5, 4, 7, 3};
  static const int tn[] = {0, 1, 1, 1, 1, 1, -1, 1, 1, 1, 2, -2};
  static const int td[] = {1, 2, 2, 2, 3, 5, 3, 1, 3, 7, 3, 5};
  int k = (index - 1) % 12;
  Rational s(sn[k], sd[k]), t(tn[k], td[k]);
  s.canonicalize();
  t.canonicalize();
  t += index > 12 ? Rational(index / 12) : Rational(0);
  Rational d = 1 + s * s + t * t;
  return Covector::tangential(n, {2 * s / d, 2 * t / d, (1 - s * s - t * t) / d});
}

class ExteriorAlgebra {
public:
  explicit ExteriorAlgebra(int n) : n_(n) {
    if (n < 1 || n > 8)
      throw ScopeError("unsupported exterior algebra dimension " + std::to_string(n));
    // Graded-lexicographic order: by grade, then lexicographically on indices.
    for (int g = 0; g <= n; ++g) {
      std::vector<int> idx(static_cast<std::size_t>(g));
      enumerate(idx, 0, 1, g);
    }
    index_of_.assign(std::size_t{1} << n, 0);
    for (std::size_t k = 0; k < basis_.size(); ++k)
      index_of_[basis_[k].mask()] = k;
    for (int k = 1; k <= n; ++k)
      eps_basis_.push_back(build_eps(k));
  }

  int n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Blade>& basis() const { return basis_; }

  Endo identity() const { return Endo::identity(dim()); }
  Endo zero() const { return Endo(dim()); }

  /// eps(e_k), 1-based.
  const Endo& eps_basis(int k) const { return eps_basis_.at(static_cast<std::size_t>(k - 1)); }

  Endo eps(const Covector& v) const {
    check(v);
    Endo m = zero();
    for (int k = 1; k <= n_; ++k)
      if (sgn(v.components[static_cast<std::size_t>(k - 1)]) != 0)
        m += ScalarRing(v.components[static_cast<std::size_t>(k - 1)]) * eps_basis(k);
    return m;
  }

  /// Interior multiplication with respect to the Euclidean pairing.
  Endo iota(const Covector& v) const { return eps(v).transpose(); }

private:
  void enumerate(std::vector<int>& idx, int pos, int start, int g) {
    if (pos == g) {
      basis_.push_back(Blade{idx});
      return;
    }
    for (int v = start; v <= n_; ++v) {
      idx[static_cast<std::size_t>(pos)] = v;
      enumerate(idx, pos + 1, v + 1, g);
    }
  }

  Endo build_eps(int k) const {
    Endo m = zero();
    std::uint32_t bit = 1u << (k - 1);
    for (std::size_t col = 0; col < basis_.size(); ++col) {
      std::uint32_t mask = basis_[col].mask();
      if (mask & bit)
        continue;
      int before = std::popcount(mask & (bit - 1));
      m(index_of_[mask | bit], col) = ScalarRing(before % 2 ? -1L : 1L);
    }
    return m;
  }

  void check(const Covector& v) const {
    if (v.dim() != n_)
      throw DimensionMismatch("covector of dimension " + std::to_string(v.dim()) + " in Lambda^*(R^" +
                              std::to_string(n_) + ")");
  }

  int n_;
  std::vector<Blade> basis_;
  std::vector<std::size_t> index_of_;
  std::vector<Endo> eps_basis_;
};

/// Nonminimal parameters of D = a d + b delta; requires ab != 0.
struct Params {
  Rational a;
  Rational b;

  Params(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
    if (sgn(a) == 0 || sgn(b) == 0)
      throw InvalidParameter("nonminimal parameters require ab != 0");
  }
  Params swapped() const { return Params(b, a); }
};

enum class Operator { D, Dstar };

inline std::string to_string(Operator op) { return op == Operator::D ? "D" : "Dstar"; }
inline Operator parse_operator(const std::string& s) {
  if (s == "D")
    return Operator::D;
  if (s == "Dstar")
    return Operator::Dstar;
  throw ParseError("unknown operator '" + s + "' (expected D or Dstar)");
}
inline Operator adjoint(Operator op) { return op == Operator::D ? Operator::Dstar : Operator::D; }

/// Coefficients (x, y) of the twisted action x eps - y iota: (a, b) for D, (b, a) for D*.
inline std::pair<Rational, Rational> twist_coefficients(const Params& p, Operator op) {
  return op == Operator::D ? std::pair{p.a, p.b} : std::pair{p.b, p.a};
}

struct CliffordActions {
  Endo c;       // eps - iota
  Endo c_hat;   // eps + iota
  Endo c_tilde; // a eps - b iota
  Endo c_bar;   // b eps - a iota
};

inline CliffordActions clifford_actions(const ExteriorAlgebra& alg, const Rational& a, const Rational& b,
                                        const Covector& v) {
  if (sgn(a) == 0 || sgn(b) == 0)
    throw InvalidParameter("Clifford twist requires ab != 0");
  Endo e = alg.eps(v), i = alg.iota(v);
  return {e - i, e + i, ScalarRing(a) * e - ScalarRing(b) * i, ScalarRing(b) * e - ScalarRing(a) * i};
}

/// c~(v) for D, c-(v) for D*.
inline Endo twisted_action(const ExteriorAlgebra& alg, const Params& p, Operator op, const Covector& v) {
  auto [x, y] = twist_coefficients(p, op);
  return ScalarRing(x) * alg.eps(v) - ScalarRing(y) * alg.iota(v);
}

/// sigma_0 at the boundary point: h * M with
/// M = -1/4 sum_{i<n} t(e_i) c^(e_i) c^(e_n) + 1/4 sum_{i<n} t(e_i) c(e_i) c(e_n),
/// t the twisted action of `op`.
inline Endo p0_matrix(const ExteriorAlgebra& alg, const Params& p, Operator op) {
  const int n = alg.n();
  Covector en = Covector::normal(n);
  Endo cn = alg.eps(en) - alg.iota(en);
  Endo chn = alg.eps(en) + alg.iota(en);
  Endo m = alg.zero();
  for (int i = 1; i < n; ++i) {
    Covector ei = Covector::basis(n, i);
    Endo t = twisted_action(alg, p, op, ei);
    Endo ci = alg.eps(ei) - alg.iota(ei);
    Endo chi = alg.eps(ei) + alg.iota(ei);
    m -= t * chi * chn;
    m += t * ci * cn;
  }
  return ScalarRing::monomial(GaussianRational(Rational(1, 4)), 1) * m;
}

/// Connection coefficients omega_{s,t}(e_i) at the boundary point of the collar metric,
/// in units of h: omega_{n,i}(e_i) = 1/2, omega_{i,n}(e_i) = -1/2 for i < n, else 0.
inline Rational collar_connection(int n, int s, int t, int i) {
  if (i < n && s == n && t == i)
    return Rational(1, 2);
  if (i < n && s == i && t == n)
    return Rational(-1, 2);
  return Rational(0);
}

/// sigma_0 from the full connection sum 1/4 sum_{i,s,t} omega_{s,t}(e_i) t(e_i) [c^(e_s)c^(e_t) - c(e_s)c(e_t)].
inline Endo p0_from_connection(const ExteriorAlgebra& alg, const Params& p, Operator op) {
  const int n = alg.n();
  Endo m = alg.zero();
  for (int i = 1; i <= n; ++i)
    for (int s = 1; s <= n; ++s)
      for (int t = 1; t <= n; ++t) {
        Rational w = collar_connection(n, s, t, i);
        if (sgn(w) == 0)
          continue;
        Covector es = Covector::basis(n, s), et = Covector::basis(n, t), ei = Covector::basis(n, i);
        Endo bracket = (alg.eps(es) + alg.iota(es)) * (alg.eps(et) + alg.iota(et)) -
                       (alg.eps(es) - alg.iota(es)) * (alg.eps(et) - alg.iota(et));
        m += ScalarRing(w) * (twisted_action(alg, p, op, ei) * bracket);
      }
  return ScalarRing::monomial(GaussianRational(Rational(1, 4)), 1) * m;
}

} // namespace ncwres
