#pragma once

// The boundary term Phi of the residue for pi^+ L^{-1} o pi^+ R^{-1}:
//
//   Phi = sum over r, l <= -1, j, k >= 0, alpha with -r - l + j + k + |alpha| = n - 1 of
//         (-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!)
//         * int_{|xi'|=1} int_R trace[ dxn^j dxi'^alpha dxi_n^k pi^+ sigma_r(L)
//                                      * dx'^alpha dxi_n^{j+1} dxn^k sigma_l(R) ] dxi_n sigma(xi')
//
// evaluated at a boundary point of the collar metric. The sphere integral is
// the (checked) direction-independent value times Omega_{n-1}.

#include <future>
#include <string>
#include <vector>

#include "ncwres/coeff_reconstruct.hpp"
#include "ncwres/errors.hpp"
#include "ncwres/exterior_algebra.hpp"
#include "ncwres/scalar_field.hpp"
#include "ncwres/symbol_calculus.hpp"

namespace ncwres {

struct BoundaryCase {
  std::string name;
  int r = -1;
  int l = -1;
  int j = 0;
  int k = 0;
  int alpha = 0; // |alpha|; multi-indices of this order are summed

  /// (-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!), valid for |alpha| <= 1.
  GaussianRational prefactor() const {
    if (alpha > 1)
      throw ScopeError("multi-indices with |alpha| > 1 are not modeled");
    long fact = 1;
    for (int m = 2; m <= j + k + 1; ++m)
      fact *= m;
    return pow(-GaussianRational::i(), alpha + j + k + 1) * GaussianRational(Rational(1, fact));
  }
  /// -r - l + j + k + |alpha|
  int weight() const { return -r - l + j + k + alpha; }
};

/// Every case of the boundary sum for orders p1 = p2 = 1, in the order a(I), a(II), a(III), b, c.
inline std::vector<BoundaryCase> enumerate_cases(int n, int p1 = 1, int p2 = 1) {
  if (p1 != 1 || p2 != 1)
    throw ScopeError("only first-order operators are supported");
  if (n != 3 && n != 4)
    throw ScopeError("only n = 3 and n = 4 are supported, got n = " + std::to_string(n));
  std::vector<BoundaryCase> all;
  const int w = n - 1;
  for (int r = -1; r >= -w; --r)
    for (int l = -1; -r - l <= w; --l)
      for (int alpha = 0; alpha <= w; ++alpha)
        for (int j = 0; j <= w; ++j) {
          int k = w - (-r - l) - alpha - j;
          if (k < 0)
            continue;
          all.push_back({"", r, l, j, k, alpha});
        }
  // Fixed presentation order.
  auto rank = [](const BoundaryCase& c) {
    if (c.r == -1 && c.l == -1)
      return c.alpha > 0 ? 0 : (c.j > 0 ? 1 : (c.k > 0 ? 2 : 0));
    return c.r < -1 ? 3 : 4;
  };
  std::stable_sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return rank(x) < rank(y); });
  for (auto& c : all) {
    if (n == 3)
      c.name = "a";
    else
      c.name = std::vector<std::string>{"a(I)", "a(II)", "a(III)", "b", "c"}[static_cast<std::size_t>(rank(c))];
  }
  return all;
}

inline std::string boundary_units(int n) { return n == 4 ? "pi*h'(0)*Omega_3" : "pi*Omega_2"; }
inline std::string extrinsic_units(int n) { return "pi*K*Omega_" + std::to_string(n - 1); }

/// dxn^j dxi'^alpha dxi_n^k pi^+ sigma_r(L), for one tangential direction `dir` when |alpha| = 1.
inline RationalSymbol case_left_factor(const BoundaryCase& c, const OperatorSymbols& L, int dir) {
  const BoundaryJet& s = L.sigma(c.r);
  if (c.j > 1 || c.alpha > 1 || (c.j > 0 && c.alpha > 0))
    throw ScopeError("higher jets of " + s.name + " are not modeled");
  const RationalSymbol& base = c.j == 1 ? s.normal_derivative() : (c.alpha == 1 ? s.xi_derivative(dir) : s.value);
  return diff_xi(pi_plus(base), c.k);
}

/// dx'^alpha dxi_n^{j+1} dxn^k sigma_l(R).
inline RationalSymbol case_right_factor(const BoundaryCase& c, const OperatorSymbols& R, int dir) {
  const BoundaryJet& s = R.sigma(c.l);
  if (c.k > 1 || c.alpha > 1 || (c.k > 0 && c.alpha > 0))
    throw ScopeError("higher jets of " + s.name + " are not modeled");
  const RationalSymbol& base = c.k == 1 ? s.normal_derivative() : (c.alpha == 1 ? s.x_derivative(dir) : s.value);
  return diff_xi(base, c.j + 1);
}

/// The trace integrand of one case, summed over |alpha| = 1 directions; prefactor not applied.
inline RationalFn case_integrand(const BoundaryCase& c, const OperatorSymbols& L, const OperatorSymbols& R, int n) {
  if (c.alpha == 0)
    return trace_product(case_left_factor(c, L, 0), case_right_factor(c, R, 0));
  RationalFn sum;
  for (int dir = 0; dir < n - 1; ++dir) {
    RationalSymbol right = case_right_factor(c, R, dir);
    if (right.is_zero())
      continue; // tangential x-derivatives vanish at x0
    sum += trace_product(case_left_factor(c, L, dir), right);
  }
  return sum;
}

/// -i int tr[dxi_n sigma_{-1} * sigma_{-2}] integrand (prefactor not applied); L = R.
inline RationalFn leibniz_correction_integrand(const OperatorSymbols& S) {
  return trace_product(diff_xi(S.q1.value), S.q2.value);
}

struct EvalOptions {
  std::size_t xi_samples = 3;
  std::size_t ab_samples = kDefaultParameterSamples;
  bool parallel = true;
};

/// Integrands of `cases` (plus the Leibniz correction when L = R and requested) at one (a, b),
/// checked to agree for every sampled xi' direction.
struct PointIntegrands {
  std::vector<RationalFn> cases;
  RationalFn leibniz_correction;
};

inline PointIntegrands point_integrands(int n, const std::vector<BoundaryCase>& cases, Operator left, Operator right,
                                        const Rational& a, const Rational& b, std::size_t xi_samples,
                                        bool with_leibniz = false) {
  if (xi_samples == 0)
    throw InvalidParameter("at least one xi' sample is required");
  ExteriorAlgebra alg(n);
  Params params(a, b);
  PointIntegrands first;
  for (std::size_t s = 0; s < xi_samples; ++s) {
    BoundaryPoint pt(alg, params, unit_tangential(n, static_cast<int>(s)));
    OperatorSymbols L = build_symbols(pt, left);
    OperatorSymbols R = left == right ? L : build_symbols(pt, right);
    PointIntegrands cur;
    for (const auto& c : cases)
      cur.cases.push_back(case_integrand(c, L, R, n));
    if (with_leibniz) {
      if (left != right)
        throw ScopeError("the Leibniz reduction needs equal operators");
      cur.leibniz_correction = leibniz_correction_integrand(L);
    }
    if (s == 0) {
      first = std::move(cur);
      continue;
    }
    for (std::size_t m = 0; m < cases.size(); ++m)
      if (cur.cases[m] != first.cases[m])
        throw SphereIntegrationUnsupported("case " + cases[m].name + " integrand depends on the direction of xi'");
    if (cur.leibniz_correction != first.leibniz_correction)
      throw SphereIntegrationUnsupported("Leibniz correction depends on the direction of xi'");
  }
  return first;
}

/// Expected h-degree of a nonzero integrand: 1 for n = 4, 0 for n = 3.
inline int expected_h_degree(int n) { return n == 4 ? 1 : 0; }

/// prefactor * (1/pi) int_R integrand, as the coefficient of h^{expected degree}.
inline GaussianRational integrate_case(const RationalFn& integrand, const GaussianRational& prefactor, int n) {
  if (integrand.is_zero())
    return {};
  const int d = expected_h_degree(n);
  for (int m = 0; m <= ScalarRing::kMaxDegree; ++m)
    if (m != d && !integrand.h_part(m).is_zero())
      throw ModelingError("integrand has a component of h-degree " + std::to_string(m));
  ScalarRing v = integrate_line(integrand);
  return prefactor * v.coeff(d);
}

/// Evaluates f(a, b) over the parameter samples, in parallel when allowed.
template <class F>
auto over_parameter_samples(std::size_t count, bool parallel, F f) {
  using R = decltype(f(std::declval<Rational>(), std::declval<Rational>()));
  auto pts = sample_points(count);
  std::vector<R> out;
  if (!parallel) {
    for (auto& [a, b] : pts)
      out.push_back(f(a, b));
    return out;
  }
  std::vector<std::future<R>> fut;
  for (auto& [a, b] : pts)
    fut.push_back(std::async(std::launch::async, [&f, a = a, b = b] { return f(a, b); }));
  for (auto& x : fut)
    out.push_back(x.get());
  return out;
}

struct CaseResult {
  BoundaryCase c;
  BoundaryValue value;
};

struct BoundaryResult {
  int n = 4;
  Operator left = Operator::D;
  Operator right = Operator::Dstar;
  std::vector<CaseResult> cases;
  BoundaryValue total;
};

/// Case values and their sum, reconstructed over the parameter samples.
inline BoundaryResult phi_total(int n, Operator left, Operator right, const EvalOptions& opt = {}) {
  auto cases = enumerate_cases(n);
  auto per_point = over_parameter_samples(opt.ab_samples, opt.parallel, [&](const Rational& a, const Rational& b) {
    PointIntegrands pi = point_integrands(n, cases, left, right, a, b, opt.xi_samples);
    std::vector<GaussianRational> v;
    for (std::size_t m = 0; m < cases.size(); ++m)
      v.push_back(integrate_case(pi.cases[m], cases[m].prefactor(), n));
    return v;
  });
  auto pts = sample_points(opt.ab_samples);
  BoundaryResult res;
  res.n = n;
  res.left = left;
  res.right = right;
  res.total.units = boundary_units(n);
  for (std::size_t m = 0; m < cases.size(); ++m) {
    SampleSet s;
    for (std::size_t p = 0; p < pts.size(); ++p)
      s.push_back({pts[p].first, pts[p].second, per_point[p][m]});
    BoundaryValue v = reconstruct(s, boundary_units(n));
    res.total += v;
    res.cases.push_back({cases[m], v});
  }
  SampleSet totals;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    GaussianRational t;
    for (const auto& x : per_point[p])
      t += x;
    totals.push_back({pts[p].first, pts[p].second, t});
  }
  if (reconstruct(totals) != res.total)
    throw InternalConsistencyError("total does not equal the sum of the cases");
  return res;
}

/// One case value at a single parameter point.
inline GaussianRational case_scalar(int n, const BoundaryCase& c, Operator left, Operator right, const Rational& a,
                                    const Rational& b, std::size_t xi_samples = 3) {
  PointIntegrands pi = point_integrands(n, {c}, left, right, a, b, xi_samples);
  return integrate_case(pi.cases[0], c.prefactor(), n);
}

/// One case value reconstructed over the parameter samples.
inline BoundaryValue case_value(int n, const BoundaryCase& c, Operator left, Operator right,
                                const EvalOptions& opt = {}) {
  auto vals = over_parameter_samples(opt.ab_samples, opt.parallel, [&](const Rational& a, const Rational& b) {
    return case_scalar(n, c, left, right, a, b, opt.xi_samples);
  });
  auto pts = sample_points(opt.ab_samples);
  SampleSet s;
  for (std::size_t p = 0; p < pts.size(); ++p)
    s.push_back({pts[p].first, pts[p].second, vals[p]});
  return reconstruct(s, boundary_units(n));
}

struct LeibnizResult {
  BoundaryValue direct;     // case (r, l) = (-2, -1), evaluated directly
  BoundaryValue reduced;    // case (r, l) = (-1, -2)
  BoundaryValue correction; // -i int tr[dxi_n sigma_{-1} sigma_{-2}]
  BoundaryValue via_leibniz; // reduced + correction
};

/// The (r, l) = (-2, -1) case of the (op, op) pairing reached from the (-1, -2) case by
///   int tr[pi^+ X dY] = int tr[X dY] + int tr[pi^+ Y dX].
/// Throws InternalConsistencyError if the two paths disagree.
inline LeibnizResult leibniz_case_c(int n, Operator op, const EvalOptions& opt = {}) {
  if (n != 4)
    throw ScopeError("the Leibniz reduction is modeled for n = 4");
  std::vector<BoundaryCase> cs;
  for (const auto& c : enumerate_cases(n))
    if (c.r == -2 || c.l == -2)
      cs.push_back(c);
  const BoundaryCase& rm2 = cs[0].r == -2 ? cs[0] : cs[1];
  const BoundaryCase& lm2 = cs[0].r == -2 ? cs[1] : cs[0];
  const GaussianRational minus_i = -GaussianRational::i();
  auto per_point = over_parameter_samples(opt.ab_samples, opt.parallel, [&](const Rational& a, const Rational& b) {
    PointIntegrands pi = point_integrands(n, {rm2, lm2}, op, op, a, b, opt.xi_samples, true);
    return std::array<GaussianRational, 3>{integrate_case(pi.cases[0], rm2.prefactor(), n),
                                           integrate_case(pi.cases[1], lm2.prefactor(), n),
                                           integrate_case(pi.leibniz_correction, minus_i, n)};
  });
  auto pts = sample_points(opt.ab_samples);
  SampleSet sd, sr, sc;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    auto [a, b] = pts[p];
    if (per_point[p][0] != per_point[p][1] + per_point[p][2])
      throw InternalConsistencyError("Leibniz path differs from the direct path at (a, b) = (" + format_rational(a) +
                                     ", " + format_rational(b) + ")");
    sd.push_back({a, b, per_point[p][0]});
    sr.push_back({a, b, per_point[p][1]});
    sc.push_back({a, b, per_point[p][2]});
  }
  LeibnizResult res;
  res.direct = reconstruct(sd, boundary_units(n));
  res.reduced = reconstruct(sr, boundary_units(n));
  res.correction = reconstruct(sc, boundary_units(n));
  res.via_leibniz = res.reduced + res.correction;
  return res;
}

/// Substitutes h'(0) = -2K/(n-1): the coefficient of pi K Omega_{n-1}.
inline BoundaryValue to_extrinsic(const BoundaryValue& v, int n) {
  if (n != 4)
    throw ScopeError("the extrinsic form is defined for n = 4");
  BoundaryValue r = GaussianRational(Rational(-2, n - 1)) * v;
  r.units = extrinsic_units(n);
  return r;
}

} // namespace ncwres
