#pragma once

// Reference values and the checks that compare them with the engine.
//
// Entry kinds:
//   identity           engine expression == reference expression at sampled (a, b) and xi'
//   printed_integral     prefactor * integral of a printed integrand == printed value
//   residue            residue at +i of a printed integrand == printed value
//   case               one boundary case, matched by (r, l, j, k, |alpha|)
//   total              boundary total; optional case_sum_of adds the printed-case-sum comparison
//   extrinsic          total in terms of K
//   gravity_boundary   boundary constant times the extrinsic total
//   leibniz_correction -i int tr[dxi sigma_{-1} sigma_{-2}] of the equal-operator pairing
//   interior           interior multiplier

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ncwres/boundary_residue.hpp"
#include "ncwres/coeff_reconstruct.hpp"
#include "ncwres/errors.hpp"
#include "ncwres/expr.hpp"
#include "ncwres/interior_term.hpp"

namespace ncwres {

using Json = nlohmann::ordered_json;

struct Check {
  std::string eq;
  int part = 0;
  std::string kind;
  std::string status; // match | mismatch | consistent | inconsistent | pass | fail
  std::string engine;
  std::string reference;
  std::string detail;

  bool is_mismatch() const { return status == "mismatch"; }
  bool is_flag() const { return status == "inconsistent"; }
  bool is_failure() const { return status == "fail"; }
  bool passed() const { return status == "match" || status == "consistent" || status == "pass"; }
  /// eq plus the part index when there is one.
  std::string label() const { return part ? eq + "[" + std::to_string(part) + "]" : eq; }
};

struct GoldenFile {
  std::string path;
  int version = 0;
  std::vector<Json> entries;
};

inline const std::vector<std::string>& golden_kinds() {
  static const std::vector<std::string> k = {"identity", "printed_integral",     "residue",  "case",
                                             "total",    "extrinsic",          "gravity_boundary",
                                             "leibniz_correction", "interior"};
  return k;
}

inline GoldenFile parse_golden(const std::string& text, std::string path = {}) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("golden file " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw ParseError("golden file " + path + ": missing entries array");
  GoldenFile g;
  g.path = std::move(path);
  g.version = doc.value("version", 0);
  for (const auto& e : doc["entries"]) {
    if (!e.contains("eq") || !e.contains("kind") || !e.contains("dim"))
      throw ParseError("golden entry without eq, kind or dim");
    auto kind = e["kind"].get<std::string>();
    bool known = false;
    for (const auto& k : golden_kinds())
      known = known || k == kind;
    if (!known)
      throw ParseError("golden entry " + e["eq"].get<std::string>() + " has unknown kind '" + kind + "'");
    g.entries.push_back(e);
  }
  return g;
}

inline GoldenFile load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open golden file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_golden(ss.str(), path);
}

/// {"a2inv": "...", ...} as a BoundaryValue; absent keys are zero.
inline BoundaryValue parse_value(const Json& j, std::string units = {}) {
  static const char* keys[] = {"a2inv", "b2inv", "abinv", "const"};
  BoundaryValue v;
  v.units = std::move(units);
  for (const auto& [k, x] : j.items()) {
    bool found = false;
    for (std::size_t m = 0; m < 4; ++m)
      if (k == keys[m]) {
        v.coeffs[m] = parse_gaussian(x.get<std::string>());
        found = true;
      }
    if (!found)
      throw ParseError("unknown coefficient key '" + k + "'");
  }
  return v;
}

inline std::optional<std::pair<Operator, Operator>> entry_pair(const Json& e) {
  if (!e.contains("pair") || e["pair"].is_null())
    return std::nullopt;
  return std::make_pair(parse_operator(e["pair"][0].get<std::string>()),
                        parse_operator(e["pair"][1].get<std::string>()));
}

inline int entry_part(const Json& e) { return e.value("part", 0); }

namespace detail {

inline std::string sample_label(const Rational& a, const Rational& b, std::size_t xi) {
  return "a=" + format_rational(a) + ", b=" + format_rational(b) + ", xi' sample " + std::to_string(xi);
}

inline Check value_check(const Json& e, const std::string& kind, const BoundaryValue& engine,
                         const BoundaryValue& ref, bool printed_only = false) {
  Check c;
  c.eq = e["eq"].get<std::string>();
  c.part = entry_part(e);
  c.kind = kind;
  c.engine = format_boundary_value(engine);
  c.reference = format_boundary_value(ref);
  bool ok = engine == ref;
  c.status = printed_only ? (ok ? "consistent" : "inconsistent") : (ok ? "match" : "mismatch");
  if (!ok) {
    static const char* keys[] = {"a2inv", "b2inv", "abinv", "const"};
    for (std::size_t m = 0; m < 4; ++m)
      if (engine.coeffs[m] != ref.coeffs[m]) {
        if (!c.detail.empty())
          c.detail += "; ";
        c.detail += std::string(keys[m]) + ": " + format_gaussian(engine.coeffs[m]) + " vs " +
                    format_gaussian(ref.coeffs[m]);
      }
  }
  return c;
}

} // namespace detail

/// Runs golden entries, caching engine results per configuration.
class GoldenRunner {
public:
  explicit GoldenRunner(GoldenFile g, EvalOptions opt = {}) : g_(std::move(g)), opt_(opt) {}

  const GoldenFile& file() const { return g_; }
  const EvalOptions& options() const { return opt_; }

  const BoundaryResult& boundary(int n, Operator left, Operator right) {
    auto key = std::make_tuple(n, left, right);
    auto it = boundary_.find(key);
    if (it == boundary_.end())
      it = boundary_.emplace(key, phi_total(n, left, right, opt_)).first;
    return it->second;
  }

  const LeibnizResult& leibniz(Operator op) {
    auto it = leibniz_.find(op);
    if (it == leibniz_.end())
      it = leibniz_.emplace(op, leibniz_case_c(4, op, opt_)).first;
    return it->second;
  }

  /// Entries of one kind (and, when given, one eq key).
  std::vector<const Json*> find(const std::string& kind, const std::string& eq = {}) const {
    std::vector<const Json*> out;
    for (const auto& e : g_.entries)
      if (e["kind"] == kind && (eq.empty() || e["eq"] == eq))
        out.push_back(&e);
    return out;
  }

  std::vector<Check> run(const Json& e) {
    const std::string kind = e["kind"].get<std::string>();
    if (kind == "identity")
      return {identity(e)};
    if (kind == "printed_integral")
      return {printed_integral(e)};
    if (kind == "residue")
      return {residue(e)};
    if (kind == "interior")
      return {interior(e)};
    const int n = e["dim"].get<int>();
    auto pr = entry_pair(e);
    if (!pr)
      throw ParseError("entry " + e["eq"].get<std::string>() + " needs an operator pair");
    if (kind == "leibniz_correction") {
      if (pr->first != pr->second)
        throw ParseError("leibniz_correction needs equal operators");
      return {detail::value_check(e, kind, leibniz(pr->first).correction, parse_value(e["value"]))};
    }
    const BoundaryResult& br = boundary(n, pr->first, pr->second);
    if (kind == "case")
      return {case_check(e, br)};
    if (kind == "total")
      return total(e, br);
    if (kind == "extrinsic")
      return extrinsic(e, br);
    if (kind == "gravity_boundary")
      return gravity(e, br);
    throw ParseError("unhandled kind " + kind);
  }

  /// Every entry for one computed configuration: same dimension and operator pair.
  std::vector<Check> run_config(int n, Operator left, Operator right) {
    std::vector<Check> out;
    for (const auto& e : g_.entries) {
      auto pr = entry_pair(e);
      if (e["dim"].get<int>() != n || !pr || pr->first != left || pr->second != right)
        continue;
      for (auto& c : run(e))
        out.push_back(std::move(c));
    }
    return out;
  }

  /// Entries selected by a predicate on the raw entry.
  template <class Pred>
  std::vector<Check> run_where(Pred pred) {
    std::vector<Check> out;
    for (const auto& e : g_.entries)
      if (pred(e))
        for (auto& c : run(e))
          out.push_back(std::move(c));
    return out;
  }

  Check identity(const Json& e) {
    const int n = e["dim"].get<int>();
    const std::size_t xi_count = e.value("xi_samples", std::size_t{2});
    const std::size_t ab_count = e.value("ab_samples", std::size_t{5});
    const std::string es = e["engine"].get<std::string>(), ps = e["printed"].get<std::string>();
    const ExteriorAlgebra& alg = algebra(n);
    Check c;
    c.eq = e["eq"].get<std::string>();
    c.part = entry_part(e);
    c.kind = "identity";
    c.status = "match";
    for (auto& [a, b] : sample_points(ab_count)) {
      for (std::size_t s = 0; s < xi_count; ++s) {
        expr::Context& ctx = context(n, a, b, s);
        expr::Value ev = expr::evaluate(es, ctx), pv = expr::evaluate(ps, ctx);
        bool ok = expr::equal(ev, pv, alg.dim());
        if (c.engine.empty() || !ok) {
          c.engine = expr::describe(ev);
          c.reference = expr::describe(pv);
        }
        if (!ok) {
          c.status = "mismatch";
          c.detail = detail::sample_label(a, b, s);
          if (ev.is_matrix || pv.is_matrix)
            c.detail += "; " + expr::first_difference(ev, pv, alg.dim());
          return c;
        }
      }
    }
    c.detail = std::to_string(ab_count) + " (a, b) x " + std::to_string(xi_count) + " xi' samples";
    return c;
  }

  /// Scalar functional of a printed integrand, reconstructed over (a, b).
  template <class F>
  BoundaryValue scalar_functional(const Json& e, F f) {
    const int n = e["dim"].get<int>();
    const std::string src = e["integrand"].get<std::string>();
    SampleSet s;
    for (auto& [a, b] : sample_points(opt_.ab_samples)) {
      expr::Context& ctx = context(n, a, b, 0);
      expr::Value v = expr::evaluate(src, ctx);
      if (v.is_matrix)
        throw ParseError("integrand of " + e["eq"].get<std::string>() + " is not a scalar");
      s.push_back({a, b, f(v.scalar)});
    }
    return reconstruct(s);
  }

  Check printed_integral(const Json& e) {
    const int n = e["dim"].get<int>();
    GaussianRational pre = parse_gaussian(e["prefactor"].get<std::string>());
    BoundaryValue v = scalar_functional(e, [&](const RationalFn& f) {
      ScalarRing r = integrate_line(f);
      for (int m = 0; m <= ScalarRing::kMaxDegree; ++m)
        if (m != expected_h_degree(n) && !r.coeff(m).is_zero())
          throw ModelingError("printed integrand of " + e["eq"].get<std::string>() + " has an h^" +
                              std::to_string(m) + " part");
      return pre * r.coeff(expected_h_degree(n));
    });
    return detail::value_check(e, "printed_integral", v, parse_value(e["value"]), true);
  }

  Check residue(const Json& e) {
    BoundaryValue v = scalar_functional(e, [](const RationalFn& f) { return residue_plus(f).coeff(0); });
    return detail::value_check(e, "residue", v, parse_value(e["value"]), true);
  }

  Check interior(const Json& e) {
    auto pr = entry_pair(e);
    if (!pr)
      throw ParseError("interior entry needs an operator pair");
    Pair p = pair_of(pr->first, pr->second);
    std::vector<std::string> tokens;
    SampleSet s;
    for (auto& [a, b] : sample_points(opt_.ab_samples)) {
      FormalExpression f = interior_wres(p, a, b);
      tokens = f.formal_tokens;
      s.push_back({a, b, GaussianRational(f.multiplier)});
    }
    Check c = detail::value_check(e, "interior", reconstruct(s), parse_value(e["value"]));
    auto want = e.value("formal_tokens", std::vector<std::string>{});
    if (tokens != want) {
      c.status = "mismatch";
      c.detail += (c.detail.empty() ? "" : "; ") + std::string("formal tokens differ");
    }
    return c;
  }

  Check case_check(const Json& e, const BoundaryResult& br) {
    for (const auto& cr : br.cases) {
      const BoundaryCase& bc = cr.c;
      if (bc.r == e["r"].get<int>() && bc.l == e["l"].get<int>() && bc.j == e["j"].get<int>() &&
          bc.k == e["k"].get<int>() && bc.alpha == e["alpha"].get<int>()) {
        Check c = detail::value_check(e, "case", cr.value, parse_value(e["value"]));
        c.detail = "case " + bc.name + (c.detail.empty() ? "" : ": " + c.detail);
        return c;
      }
    }
    throw ParseError("no engine case matches entry " + e["eq"].get<std::string>());
  }

  /// The printed total, and when listed the sum of the printed cases.
  std::vector<Check> total(const Json& e, const BoundaryResult& br) {
    BoundaryValue ref = parse_value(e["value"]);
    std::vector<Check> out{detail::value_check(e, "total", br.total, ref)};
    if (!e.contains("case_sum_of"))
      return out;
    BoundaryValue sum;
    for (const auto& key : e["case_sum_of"]) {
      auto hits = find("case", key.get<std::string>());
      if (hits.size() != 1)
        throw ParseError("case_sum_of names " + key.get<std::string>() + " which is not a unique case entry");
      sum += parse_value((*hits[0])["value"]);
    }
    Check vs_sum = detail::value_check(e, "total_vs_case_sum", br.total, sum);
    vs_sum.eq += " (case sum)";
    out.push_back(vs_sum);
    Check cons = detail::value_check(e, "printed_consistency", ref, sum, true);
    cons.eq += " (printed total vs printed case sum)";
    out.push_back(cons);
    return out;
  }

  BoundaryValue referenced_value(const Json& e) {
    for (const auto& x : g_.entries)
      if (x["eq"] == e["from"] && x.contains("value") && x["kind"] != "printed_integral")
        return parse_value(x["value"]);
    throw ParseError("entry " + e["eq"].get<std::string>() + " refers to a missing value");
  }

  std::vector<Check> extrinsic(const Json& e, const BoundaryResult& br) {
    const int n = e["dim"].get<int>();
    BoundaryValue ref = parse_value(e["value"]);
    std::vector<Check> out{detail::value_check(e, "extrinsic", to_extrinsic(br.total, n), ref)};
    if (e.contains("from")) {
      Check c = detail::value_check(e, "extrinsic_conversion", to_extrinsic(referenced_value(e), n), ref, true);
      c.eq += " (from " + e["from"].get<std::string>() + ")";
      out.push_back(c);
    }
    return out;
  }

  /// Boundary constant times an extrinsic total, reconstructed over (a, b).
  BoundaryValue gravity_product(const BoundaryValue& extr) {
    SampleSet s;
    for (auto& [a, b] : sample_points(opt_.ab_samples)) {
      GravitySplit g = gravity_split(a, b);
      s.push_back({a, b, GaussianRational(g.boundary.multiplier) * extr.evaluate(a, b)});
    }
    return reconstruct(s);
  }

  std::vector<Check> gravity(const Json& e, const BoundaryResult& br) {
    const int n = e["dim"].get<int>();
    BoundaryValue ref = parse_value(e["value"]);
    std::vector<Check> out{
        detail::value_check(e, "gravity_boundary", gravity_product(to_extrinsic(br.total, n)), ref)};
    if (e.contains("from")) {
      Check c = detail::value_check(e, "gravity_boundary", gravity_product(referenced_value(e)), ref, true);
      c.eq += " (from " + e["from"].get<std::string>() + ")";
      out.push_back(c);
    }
    return out;
  }

  const ExteriorAlgebra& algebra(int n) {
    auto& slot = algebras_[n];
    if (!slot)
      slot = std::make_unique<ExteriorAlgebra>(n);
    return *slot;
  }

  /// Shared evaluation context, so symbols are built once per point.
  expr::Context& context(int n, const Rational& a, const Rational& b, std::size_t xi) {
    auto key = std::make_tuple(n, format_rational(a), format_rational(b), xi);
    auto& slot = contexts_[key];
    if (!slot)
      slot = std::make_unique<expr::Context>(algebra(n), Params(a, b), unit_tangential(n, static_cast<int>(xi)));
    return *slot;
  }

private:
  GoldenFile g_;
  EvalOptions opt_;
  std::map<std::tuple<int, Operator, Operator>, BoundaryResult> boundary_;
  std::map<Operator, LeibnizResult> leibniz_;
  std::map<int, std::unique_ptr<ExteriorAlgebra>> algebras_;
  std::map<std::tuple<int, std::string, std::string, std::size_t>, std::unique_ptr<expr::Context>> contexts_;
};

} // namespace ncwres
