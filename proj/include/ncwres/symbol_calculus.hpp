#pragma once

// Boundary symbols of D = a d + b delta and D* = b d + a delta at the boundary
// point x0 of the collar metric, and the first two terms q_{-1}, q_{-2} of the
// parametrix symbol.
//
// Rules at x0 (|xi'| = 1, normal coordinates on the boundary):
//   d/dx_n eps(xi') = 0,   d/dx_n iota(xi') = h iota(xi'),   d/dx_n |xi|^2 = h |xi'|^2,
//   d/dx_j of every symbol vanishes for j < n.

#include <optional>
#include <string>
#include <vector>

#include "ncwres/errors.hpp"
#include "ncwres/exterior_algebra.hpp"
#include "ncwres/matrix.hpp"
#include "ncwres/scalar_field.hpp"

namespace ncwres {

using RationalSymbol = Matrix<RationalFn>;

inline RationalSymbol lift(const Endo& m) {
  return m.map([](const ScalarRing& s) { return RationalFn(s); });
}

inline RationalSymbol diff_xi(const RationalSymbol& m, int k = 1) {
  return m.map([k](const RationalFn& f) { return diff_xi(f, k); });
}

inline RationalSymbol pi_plus(const RationalSymbol& m) {
  return m.map([](const RationalFn& f) { return pi_plus(f); });
}

inline RationalFn trace_product(const RationalSymbol& a, const RationalSymbol& b) {
  return trace_product<RationalFn>(a, b);
}

/// Largest h-degree among the entries.
inline int h_degree(const RationalSymbol& m) {
  int d = -1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m(i, j).is_zero())
        d = std::max(d, m(i, j).h_degree());
  return d;
}

/// Value at a real point xi_n = x of every entry.
inline Endo evaluate(const RationalSymbol& m, const GaussianRational& x) {
  Endo r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m(i, j).is_zero())
        r(i, j) = m(i, j)(x);
  return r;
}

/// A symbol with the derivatives available at x0.
/// dxi_tangential[j] is d/dxi_{j+1} and dx_tangential[j] is d/dx_{j+1}, j < n-1.
struct BoundaryJet {
  std::string name;
  RationalSymbol value;
  std::optional<RationalSymbol> dxn;
  std::vector<RationalSymbol> dxi_tangential;
  std::vector<RationalSymbol> dx_tangential;

  const RationalSymbol& normal_derivative() const {
    if (!dxn)
      throw ScopeError("d/dx_n of " + name + " is not modeled");
    return *dxn;
  }
  const RationalSymbol& xi_derivative(int j) const {
    if (j < 0 || j >= static_cast<int>(dxi_tangential.size()))
      throw ScopeError("tangential xi-derivative of " + name + " is not modeled");
    return dxi_tangential[static_cast<std::size_t>(j)];
  }
  const RationalSymbol& x_derivative(int j) const {
    if (j < 0 || j >= static_cast<int>(dx_tangential.size()))
      throw ScopeError("tangential x-derivative of " + name + " is not modeled");
    return dx_tangential[static_cast<std::size_t>(j)];
  }
};

/// Data fixing the boundary point: algebra, parameters and the tangential unit covector xi'.
struct BoundaryPoint {
  const ExteriorAlgebra* alg;
  Params params;
  Covector xi_prime;

  BoundaryPoint(const ExteriorAlgebra& a, Params p, Covector v) : alg(&a), params(std::move(p)), xi_prime(std::move(v)) {
    if (xi_prime.dim() != alg->n())
      throw DimensionMismatch("xi' has the wrong dimension");
    if (sgn(xi_prime.components.back()) != 0)
      throw InvalidParameter("xi' must be tangential");
    if (xi_prime.norm2() != 1)
      throw InvalidParameter("xi' must be a unit covector");
  }
  int n() const { return alg->n(); }
  Rational ab() const { return params.a * params.b; }
};

inline RationalFn xi_n() { return RationalFn::xi(); }
/// 1 / |xi|^{2k} at |xi'| = 1.
inline RationalFn inv_norm(int k) { return RationalFn::inv_norm_power(k); }

/// Twisted action t(xi) = t(xi') + xi_n t(dx_n) as a symbol.
inline RationalSymbol twisted_xi(const BoundaryPoint& pt, Operator op) {
  const int n = pt.n();
  return lift(twisted_action(*pt.alg, pt.params, op, pt.xi_prime)) +
         xi_n() * lift(twisted_action(*pt.alg, pt.params, op, Covector::normal(n)));
}

/// d/dx_n t(xi') at x0: -y h iota(xi') for t = x eps - y iota.
inline Endo dxn_twisted_tangential(const BoundaryPoint& pt, Operator op) {
  auto [x, y] = twist_coefficients(pt.params, op);
  return ScalarRing::monomial(GaussianRational(-y), 1) * pt.alg->iota(pt.xi_prime);
}

/// d/dx_n |xi|^2 at x0.
inline ScalarRing dxn_norm2(const BoundaryPoint& pt) {
  return ScalarRing::monomial(GaussianRational(pt.xi_prime.norm2()), 1);
}

struct Sigma {
  BoundaryJet p1;
  BoundaryJet p0;
};

/// sigma_1 = i t(xi) and sigma_0 = p0 at x0.
inline Sigma build_sigma(const BoundaryPoint& pt, Operator op) {
  const int n = pt.n();
  const RationalFn iu(GaussianRational::i());
  Sigma s;
  s.p1.name = "sigma_1(" + to_string(op) + ")";
  s.p1.value = iu * twisted_xi(pt, op);
  s.p1.dxn = iu * lift(dxn_twisted_tangential(pt, op));
  for (int j = 1; j < n; ++j) {
    s.p1.dxi_tangential.push_back(iu * lift(twisted_action(*pt.alg, pt.params, op, Covector::basis(n, j))));
    s.p1.dx_tangential.push_back(RationalSymbol(pt.alg->dim()));
  }
  s.p0.name = "sigma_0(" + to_string(op) + ")";
  s.p0.value = lift(p0_matrix(*pt.alg, pt.params, op));
  return s;
}

namespace detail {
inline bool is_scalar_multiple_of_identity(const RationalSymbol& m, RationalFn& scalar) {
  scalar = m(0, 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) != (i == j ? scalar : RationalFn()))
        return false;
  return true;
}
} // namespace detail

/// Sample points xi_n used by the elimination cross-check of the inverse.
inline std::vector<GaussianRational> inversion_sample_points() {
  return {GaussianRational(0), GaussianRational(1), GaussianRational(-2), GaussianRational(Rational(1, 2)),
          GaussianRational(Rational(-7, 3))};
}

/// q_{-1} = sigma_1^{-1} with its derivatives.
/// Value from sigma_1^2 = ab |xi|^2, cross-checked against Gauss-Jordan
/// inversion of sigma_1 at sample points xi_n.
inline BoundaryJet invert_principal(const BoundaryJet& p1, const BoundaryPoint& pt) {
  RationalFn sq;
  if (!detail::is_scalar_multiple_of_identity(p1.value * p1.value, sq))
    throw ModelingError("principal symbol does not square to a scalar");
  RationalFn expected = RationalFn(ScalarRing(pt.ab())) * (RationalFn(1) + xi_n() * xi_n());
  if (sq != expected)
    throw ModelingError("principal symbol square is " + format_rfn(sq) + ", expected ab|xi|^2");
  // sq = ab (xi - i)(xi + i)
  RationalFn inv_sq(XiPoly(ScalarRing(Rational(1) / pt.ab())), 1, 1);

  BoundaryJet q;
  q.name = "q_-1";
  q.value = inv_sq * p1.value;
  const std::size_t dim = p1.value.size();
  if (!(p1.value * q.value == RationalSymbol::identity(dim)))
    throw ModelingError("q_-1 is not a right inverse");

  for (const auto& x : inversion_sample_points()) {
    Endo ge = gauss_jordan_inverse<ModelingError>(evaluate(p1.value, x));
    if (!(ge == evaluate(q.value, x)))
      throw ModelingError("identity and elimination inverses differ at xi_n = " + format_gaussian(x));
  }

  auto conj = [&](const RationalSymbol& d) { return -(q.value * d * q.value); };
  q.dxn = conj(p1.normal_derivative());
  for (std::size_t j = 0; j < p1.dxi_tangential.size(); ++j) {
    q.dxi_tangential.push_back(conj(p1.dxi_tangential[j]));
    q.dx_tangential.push_back(conj(p1.dx_tangential[j]));
  }
  return q;
}

/// Gauss-Jordan inverse of sigma_1 at one xi_n value.
inline Endo invert_principal_at(const BoundaryJet& p1, const GaussianRational& x) {
  return gauss_jordan_inverse<ModelingError>(evaluate(p1.value, x));
}

/// d/dxi_j for j = 1..n: tangential from the jet, normal by differentiation.
inline RationalSymbol xi_derivative_any(const BoundaryJet& s, int j, int n) {
  return j == n ? diff_xi(s.value) : s.xi_derivative(j - 1);
}
/// d/dx_j for j = 1..n.
inline RationalSymbol x_derivative_any(const BoundaryJet& s, int j, int n) {
  return j == n ? s.normal_derivative() : s.x_derivative(j - 1);
}

/// q_{-2} = -q_{-1} [p0 q_{-1} + sum_j d_{xi_j} p1 D_{x_j} q_{-1}],  D_x = -i d_x.
inline BoundaryJet compose_q2(const BoundaryJet& p1, const BoundaryJet& p0, const BoundaryJet& q1, int n) {
  const RationalFn minus_i(-GaussianRational::i());
  RationalSymbol inner = p0.value * q1.value;
  for (int j = 1; j <= n; ++j) {
    RationalSymbol dx = x_derivative_any(q1, j, n);
    if (dx.is_zero())
      continue;
    inner += xi_derivative_any(p1, j, n) * (minus_i * dx);
  }
  BoundaryJet q2;
  q2.name = "q_-2";
  q2.value = -(q1.value * inner);
  if (h_degree(q2.value) > 1)
    throw HDegreeOverflow("q_-2 has h-degree above 1");
  return q2;
}

/// p1 q_{-2} + p0 q_{-1} + sum_j d_{xi_j} p1 D_{x_j} q_{-1}; zero when the composition is consistent.
inline RationalSymbol composition_residual(const BoundaryJet& p1, const BoundaryJet& p0, const BoundaryJet& q1,
                                           const BoundaryJet& q2, int n) {
  const RationalFn minus_i(-GaussianRational::i());
  RationalSymbol r = p1.value * q2.value + p0.value * q1.value;
  for (int j = 1; j <= n; ++j)
    r += xi_derivative_any(p1, j, n) * (minus_i * x_derivative_any(q1, j, n));
  return r;
}

/// Closed form q_{-1} = i t(xi) / (ab |xi|^2).
inline RationalSymbol q1_closed_form(const BoundaryPoint& pt, Operator op) {
  RationalFn c = RationalFn(ScalarRing(GaussianRational(Rational(0), Rational(1) / pt.ab()))) * inv_norm(1);
  return c * twisted_xi(pt, op);
}

/// Closed form d/dx_n q_{-1} = i d_n t(xi') / (ab |xi|^2) - i t(xi) d_n|xi|^2 / (ab |xi|^4).
inline RationalSymbol dxn_q1_closed_form(const BoundaryPoint& pt, Operator op) {
  GaussianRational k(Rational(0), Rational(1) / pt.ab());
  return (RationalFn(ScalarRing(k)) * inv_norm(1)) * lift(dxn_twisted_tangential(pt, op)) -
         (RationalFn(ScalarRing(k) * dxn_norm2(pt)) * inv_norm(2)) * twisted_xi(pt, op);
}

/// Closed form
///   q_{-2} = t(xi) p0 t(xi) / (a^2 b^2 |xi|^4)
///          + t(xi) / (a^2 b^2 |xi|^6) sum_j t(dx_j) [d_j t(xi) |xi|^2 - t(xi) d_j |xi|^2].
inline RationalSymbol q2_closed_form(const BoundaryPoint& pt, Operator op) {
  const int n = pt.n();
  RationalSymbol t = twisted_xi(pt, op);
  RationalSymbol p0 = lift(p0_matrix(*pt.alg, pt.params, op));
  Rational k = 1 / (pt.ab() * pt.ab());
  RationalSymbol first = (RationalFn(ScalarRing(k)) * inv_norm(2)) * (t * p0 * t);
  RationalSymbol sum(pt.alg->dim());
  RationalFn norm2 = RationalFn(1) + xi_n() * xi_n();
  for (int j = 1; j <= n; ++j) {
    RationalSymbol dt = j == n ? lift(dxn_twisted_tangential(pt, op)) : RationalSymbol(pt.alg->dim());
    ScalarRing dnorm = j == n ? dxn_norm2(pt) : ScalarRing();
    RationalSymbol bracket = norm2 * dt - RationalFn(dnorm) * t;
    if (bracket.is_zero())
      continue;
    sum += lift(twisted_action(*pt.alg, pt.params, op, Covector::basis(n, j))) * bracket;
  }
  return first + (RationalFn(ScalarRing(k)) * inv_norm(3)) * (t * sum);
}

/// Every symbol of one operator at a boundary point.
struct OperatorSymbols {
  Operator op;
  BoundaryJet p1;
  BoundaryJet p0;
  BoundaryJet q1;
  BoundaryJet q2;

  /// sigma_r of the parametrix, r in {-1, -2}.
  const BoundaryJet& sigma(int r) const {
    if (r == -1)
      return q1;
    if (r == -2)
      return q2;
    throw ScopeError("symbols of order " + std::to_string(r) + " are not modeled");
  }
};

inline OperatorSymbols build_symbols(const BoundaryPoint& pt, Operator op) {
  Sigma s = build_sigma(pt, op);
  OperatorSymbols o{op, s.p1, s.p0, {}, {}};
  o.q1 = invert_principal(o.p1, pt);
  o.q1.name = "q_-1(" + to_string(op) + ")";
  o.q2 = compose_q2(o.p1, o.p0, o.q1, pt.n());
  o.q2.name = "q_-2(" + to_string(op) + ")";
  return o;
}

} // namespace ncwres
