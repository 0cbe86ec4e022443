#pragma once

// Verification suites: module invariants plus the golden checks.
//
//   algebra  exterior-algebra and Clifford identities
//   lemmas   projections, symbol construction, trace identities and symbol intermediates
//   cases    boundary cases, totals, extrinsic and gravity forms, interior term, integrands
//   all      everything

#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ncwres/boundary_residue.hpp"
#include "ncwres/golden.hpp"
#include "ncwres/interior_term.hpp"

namespace ncwres {

namespace gen {

/// Small Gaussian rational with numerators in [-r, r] and denominators in [1, d].
inline GaussianRational gaussian(std::mt19937& rng, int r = 5, int d = 4, bool complex = true) {
  std::uniform_int_distribution<int> num(-r, r), den(1, d);
  Rational re(num(rng), den(rng)), im(complex ? num(rng) : 0, den(rng));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

inline ScalarRing scalar(std::mt19937& rng, int max_h = 1) {
  ScalarRing s;
  for (int k = 0; k <= max_h; ++k)
    s += ScalarRing::monomial(gaussian(rng), k);
  return s;
}

/// Random numerator of degree < p + q + extra over poles of orders p at +i and q at -i.
inline RationalFn rational_fn(std::mt19937& rng, int p, int q, int extra = 0) {
  std::vector<ScalarRing> c;
  int deg = std::max(0, p + q + extra - 1);
  for (int k = 0; k <= deg; ++k)
    c.push_back(scalar(rng));
  return RationalFn(XiPoly(std::move(c)), p, q);
}

/// Sample in H^-: poles only at -i, vanishing at infinity.
inline RationalFn lower_half(std::mt19937& rng) {
  std::uniform_int_distribution<int> ord(1, 4);
  return rational_fn(rng, 0, ord(rng));
}

inline std::vector<Covector> covectors(int n, std::size_t count) {
  std::vector<Covector> out;
  for (int k = 1; k <= n; ++k)
    out.push_back(Covector::basis(n, k));
  for (std::size_t s = 0; s < count; ++s) {
    Rational y(static_cast<long>(s) + 2, 3);
    y.canonicalize();
    out.push_back(unit_tangential(n, static_cast<int>(s)) + y * Covector::normal(n));
  }
  return out;
}

} // namespace gen

struct SuiteResult {
  std::vector<Check> lines;

  void add(Check c) { lines.push_back(std::move(c)); }
  void add_all(std::vector<Check> cs) {
    for (auto& c : cs)
      lines.push_back(std::move(c));
  }
  std::size_t count(const std::string& status) const {
    std::size_t n = 0;
    for (const auto& c : lines)
      n += c.status == status;
    return n;
  }
  /// 0 all passed, 2 only printed-value mismatches, 1 an invariant failed.
  int exit_code() const {
    if (count("fail"))
      return 1;
    return count("mismatch") ? 2 : 0;
  }
};

/// Runs `body`; false or an exception is a failure.
inline Check invariant(const std::string& name, const std::function<bool(std::string&)>& body) {
  Check c;
  c.eq = name;
  c.kind = "invariant";
  try {
    std::string why;
    c.status = body(why) ? "pass" : "fail";
    c.detail = why;
  } catch (const std::exception& e) {
    c.status = "fail";
    c.detail = e.what();
  }
  return c;
}

inline std::vector<std::pair<Rational, Rational>> verify_params() { return sample_points(6); }

inline std::vector<Check> algebra_invariants() {
  std::vector<Check> out;
  for (int n : {3, 4}) {
    const ExteriorAlgebra alg(n);
    const std::string tag = " (n=" + std::to_string(n) + ")";
    const auto vs = gen::covectors(n, 6);
    const Endo id = alg.identity();
    out.push_back(invariant("blade basis is graded-lexicographic of size 2^n" + tag, [&](std::string& why) {
      const auto& B = alg.basis();
      if (B.size() != (std::size_t{1} << n) || alg.dim() != B.size()) {
        why = "wrong size";
        return false;
      }
      for (std::size_t k = 1; k < B.size(); ++k) {
        bool ordered = B[k - 1].grade() < B[k].grade() ||
                       (B[k - 1].grade() == B[k].grade() && B[k - 1].indices < B[k].indices);
        if (!ordered) {
          why = "blade " + std::to_string(k) + " out of order";
          return false;
        }
      }
      return true;
    }));
    out.push_back(invariant("eps(v)^2 = 0, iota(v)^2 = 0, iota(v) = eps(v)^T" + tag, [&](std::string&) {
      for (const auto& v : vs) {
        Endo e = alg.eps(v), i = alg.iota(v);
        if (!(e * e).is_zero() || !(i * i).is_zero() || i != e.transpose())
          return false;
      }
      return true;
    }));
    out.push_back(invariant("eps(u) iota(v) + iota(v) eps(u) = <u, v>" + tag, [&](std::string& why) {
      for (const auto& u : vs)
        for (const auto& v : vs)
          if (alg.eps(u) * alg.iota(v) + alg.iota(v) * alg.eps(u) != ScalarRing(pairing(u, v)) * id) {
            why = "fails for a sampled pair";
            return false;
          }
      return true;
    }));
    out.push_back(invariant("c(v)^2 = -|v|^2, chat(v)^2 = |v|^2, c chat + chat c = 0" + tag, [&](std::string&) {
      for (const auto& v : vs) {
        CliffordActions ca = clifford_actions(alg, 1, 1, v);
        ScalarRing nv(v.norm2());
        if (ca.c * ca.c != -nv * id || ca.c_hat * ca.c_hat != nv * id ||
            !(ca.c * ca.c_hat + ca.c_hat * ca.c).is_zero())
          return false;
      }
      return true;
    }));
    out.push_back(invariant("ct(v)^2 = cb(v)^2 = -ab|v|^2" + tag, [&](std::string&) {
      for (auto& [a, b] : verify_params()) {
        Params p(a, b);
        for (const auto& v : vs) {
          Endo t = twisted_action(alg, p, Operator::D, v), s = twisted_action(alg, p, Operator::Dstar, v);
          ScalarRing w(-a * b * v.norm2());
          if (t * t != w * id || s * s != w * id)
            return false;
        }
      }
      return true;
    }));
    out.push_back(invariant("cb at (a, b) equals ct at (b, a)" + tag, [&](std::string&) {
      for (auto& [a, b] : verify_params()) {
        Params p(a, b);
        for (const auto& v : vs)
          if (twisted_action(alg, p, Operator::Dstar, v) != twisted_action(alg, p.swapped(), Operator::D, v))
            return false;
      }
      return true;
    }));
    out.push_back(invariant("sigma_0 formula equals the collar-connection sum" + tag, [&](std::string&) {
      for (auto& [a, b] : verify_params())
        for (Operator op : {Operator::D, Operator::Dstar})
          if (p0_matrix(alg, Params(a, b), op) != p0_from_connection(alg, Params(a, b), op))
            return false;
      return true;
    }));
  }
  return out;
}

inline std::vector<Check> projection_invariants() {
  std::vector<Check> out;
  out.push_back(invariant("pi+ is idempotent", [](std::string&) {
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
      RationalFn f = gen::rational_fn(rng, t % 4, (t / 4) % 4, t % 3);
      RationalFn p = pi_plus(f);
      if (pi_plus(p) != p)
        return false;
    }
    return true;
  }));
  out.push_back(invariant("pi+ annihilates H^-", [](std::string&) {
    std::mt19937 rng(12);
    for (int t = 0; t < 40; ++t)
      if (!pi_plus(gen::lower_half(rng)).is_zero())
        return false;
    return true;
  }));
  out.push_back(invariant("pi+ fixes proper fractions with poles at +i", [](std::string&) {
    std::mt19937 rng(13);
    for (int p = 1; p <= 4; ++p) {
      RationalFn f = gen::rational_fn(rng, p, 0);
      if (pi_plus(f) != f)
        return false;
    }
    return true;
  }));
  out.push_back(invariant("partial fractions recompose exactly", [](std::string&) {
    std::mt19937 rng(14);
    for (int t = 0; t < 40; ++t) {
      RationalFn f = gen::rational_fn(rng, t % 4, (t / 4) % 4, t % 3);
      if (recompose(pf_decompose(f)) != f)
        return false;
    }
    return true;
  }));
  return out;
}

inline std::vector<Check> symbol_invariants() {
  std::vector<Check> out;
  for (int n : {3, 4}) {
    const ExteriorAlgebra alg(n);
    const std::string tag = " (n=" + std::to_string(n) + ")";
    auto each_point = [&](const std::function<bool(const BoundaryPoint&, Operator)>& f) {
      for (auto& [a, b] : sample_points(5))
        for (int s = 0; s < 3; ++s) {
          BoundaryPoint pt(alg, Params(a, b), unit_tangential(n, s));
          for (Operator op : {Operator::D, Operator::Dstar})
            if (!f(pt, op))
              return false;
        }
      return true;
    };
    out.push_back(invariant("q_-1, d_xn q_-1, q_-2 equal their closed forms" + tag, [&](std::string&) {
      return each_point([](const BoundaryPoint& pt, Operator op) {
        OperatorSymbols s = build_symbols(pt, op);
        return s.q1.value == q1_closed_form(pt, op) && s.q1.normal_derivative() == dxn_q1_closed_form(pt, op) &&
               s.q2.value == q2_closed_form(pt, op);
      });
    }));
    out.push_back(invariant("composition residual vanishes" + tag, [&](std::string&) {
      return each_point([n](const BoundaryPoint& pt, Operator op) {
        OperatorSymbols s = build_symbols(pt, op);
        return composition_residual(s.p1, s.p0, s.q1, s.q2, n).is_zero();
      });
    }));
    out.push_back(invariant("a <-> b maps D symbols to D* symbols" + tag, [&](std::string&) {
      return each_point([&](const BoundaryPoint& pt, Operator op) {
        if (op != Operator::D)
          return true;
        BoundaryPoint sw(alg, pt.params.swapped(), pt.xi_prime);
        OperatorSymbols d = build_symbols(pt, Operator::D), s = build_symbols(sw, Operator::Dstar);
        return d.p1.value == s.p1.value && d.p0.value == s.p0.value && d.q1.value == s.q1.value &&
               d.q1.normal_derivative() == s.q1.normal_derivative() && d.q2.value == s.q2.value;
      });
    }));
  }
  return out;
}

inline std::vector<Check> case_invariants(GoldenRunner& g) {
  std::vector<Check> out;
  out.push_back(invariant("(D*, D) boundary values are the a <-> b image of (D, D*)", [&](std::string& why) {
    const BoundaryResult& x = g.boundary(4, Operator::D, Operator::Dstar);
    const BoundaryResult& y = g.boundary(4, Operator::Dstar, Operator::D);
    for (std::size_t m = 0; m < x.cases.size(); ++m)
      if (y.cases[m].value != x.cases[m].value.swapped()) {
        why = "case " + x.cases[m].c.name;
        return false;
      }
    return y.total == x.total.swapped();
  }));
  out.push_back(invariant("(D, D): a(II) + a(III) = 0 and b + c = 0", [&](std::string&) {
    const BoundaryResult& x = g.boundary(4, Operator::D, Operator::D);
    return (x.cases[1].value + x.cases[2].value).is_zero() && (x.cases[3].value + x.cases[4].value).is_zero() &&
           x.total.is_zero();
  }));
  out.push_back(invariant("constant coefficient of every case vanishes", [&](std::string& why) {
    for (auto cfg : {std::make_tuple(4, Operator::D, Operator::Dstar), std::make_tuple(4, Operator::D, Operator::D),
                     std::make_tuple(3, Operator::D, Operator::Dstar)}) {
      const BoundaryResult& x = g.boundary(std::get<0>(cfg), std::get<1>(cfg), std::get<2>(cfg));
      for (const auto& c : x.cases)
        if (!c.value.constant().is_zero()) {
          why = c.c.name;
          return false;
        }
    }
    return true;
  }));
  for (Operator op : {Operator::D, Operator::Dstar})
    out.push_back(invariant("Leibniz path equals the direct path (" + to_string(op) + ", " + to_string(op) + ")",
                            [&g, op](std::string&) {
                              const LeibnizResult& l = g.leibniz(op);
                              return l.direct == l.via_leibniz;
                            }));
  out.push_back(invariant("c1 dual path agrees for k = 0..4", [](std::string&) {
    for (auto& [a, b] : sample_points(12))
      for (int k = 0; k <= 4; ++k)
        if (c1_coeff(k, a, b) != c1_coeff_resummed(k, a, b))
          return false;
    return true;
  }));
  out.push_back(invariant("extrinsic conversion sends h'(0) to -2/3 K", [](std::string&) {
    BoundaryValue one = BoundaryValue::make(0, 0, 0, 1);
    return to_extrinsic(one, 4).constant() == GaussianRational(Rational(-2, 3)) &&
           to_extrinsic(BoundaryValue{}, 4).is_zero();
  }));
  return out;
}

inline bool is_lemma_entry(const Json& e) {
  if (e["kind"] != "identity")
    return false;
  auto g = e.value("group", std::string{});
  return g == "lemma" || g == "projection" || g == "symbol";
}

inline SuiteResult run_suite(const std::string& suite, GoldenRunner& g) {
  SuiteResult r;
  const bool all = suite == "all";
  if (!all && suite != "algebra" && suite != "lemmas" && suite != "cases")
    throw InvalidParameter("unknown suite '" + suite + "'");
  if (all || suite == "algebra")
    r.add_all(algebra_invariants());
  if (all || suite == "lemmas") {
    r.add_all(projection_invariants());
    r.add_all(symbol_invariants());
    r.add_all(g.run_where(is_lemma_entry));
  }
  if (all || suite == "cases") {
    r.add_all(case_invariants(g));
    r.add_all(g.run_where([](const Json& e) { return !is_lemma_entry(e); }));
  }
  return r;
}

inline void print_suite(const SuiteResult& r, std::ostream& os) {
  for (const auto& c : r.lines) {
    std::string tag = c.passed() ? "PASS" : (c.is_flag() ? "FLAG" : "FAIL");
    os << tag << "  " << c.label() << "  [" << c.kind << "]";
    if (!c.passed()) {
      if (c.kind != "invariant")
        os << "  engine: " << c.engine << "  reference: " << c.reference;
      if (!c.detail.empty())
        os << "  (" << c.detail << ")";
    }
    os << "\n";
  }
  os << "summary: " << r.count("pass") + r.count("match") + r.count("consistent") << " passed, "
     << r.count("mismatch") << " mismatched reference values, " << r.count("inconsistent")
     << " flagged reference inconsistencies, " << r.count("fail") << " failed invariants\n";
}

} // namespace ncwres
