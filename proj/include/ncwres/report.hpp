#pragma once

// WresReport: one computed configuration serialized as JSON.

#include <ostream>
#include <string>
#include <vector>

#include "ncwres/boundary_residue.hpp"
#include "ncwres/golden.hpp"
#include "ncwres/interior_term.hpp"

namespace ncwres {

struct RunConfig {
  int dim = 4;
  Operator left = Operator::D;
  Operator right = Operator::Dstar;
  Rational a = 1;
  Rational b = 1;
  std::size_t xi_samples = 3;
  std::size_t ab_samples = kDefaultParameterSamples;
  bool parallel = true;

  void validate() const {
    if (dim != 3 && dim != 4)
      throw ScopeError("dimension must be 3 or 4, got " + std::to_string(dim));
    Params p(a, b);
    if (xi_samples == 0)
      throw InvalidParameter("at least one xi' sample is required");
  }
  EvalOptions options() const { return {xi_samples, ab_samples, parallel}; }
};

inline Json coeffs_json(const BoundaryValue& v) {
  Json j = Json::object();
  j["a2inv"] = format_gaussian(v.a2inv());
  j["b2inv"] = format_gaussian(v.b2inv());
  j["abinv"] = format_gaussian(v.abinv());
  j["const"] = format_gaussian(v.constant());
  return j;
}

/// coeffs, the display form and the value at (a, b).
inline Json value_json(const BoundaryValue& v, const RunConfig& cfg) {
  Json j = Json::object();
  j["units"] = v.units;
  j["coeffs"] = coeffs_json(v);
  j["expression"] = format_boundary_value(v);
  j["value"] = format_gaussian(v.evaluate(cfg.a, cfg.b));
  return j;
}

inline Json check_json(const Check& c) {
  Json j = Json::object();
  j["eq"] = c.eq;
  if (c.part)
    j["part"] = c.part;
  j["kind"] = c.kind;
  j["status"] = c.status;
  j["engine"] = c.engine;
  j["paper"] = c.reference;
  if (!c.detail.empty())
    j["detail"] = c.detail;
  return j;
}

inline Json interior_json(const RunConfig& cfg) {
  Json j = Json::object();
  if (cfg.dim != 4) {
    j["multiplier"] = nullptr;
    j["formal_tokens"] = Json::array();
    j["reason"] = "interior closed forms are modeled for dimension 4";
    return j;
  }
  try {
    FormalExpression f = interior_wres(pair_of(cfg.left, cfg.right), cfg.a, cfg.b);
    j["multiplier"] = format_rational(f.multiplier);
    j["formal_tokens"] = f.formal_tokens;
    j["expression"] = f.text();
  } catch (const ScopeError& e) {
    j["multiplier"] = nullptr;
    j["formal_tokens"] = Json::array();
    j["reason"] = e.what();
  }
  return j;
}

inline Json gravity_json(const RunConfig& cfg, const BoundaryResult& br) {
  if (cfg.dim != 4 || cfg.left != Operator::D || cfg.right != Operator::Dstar)
    return nullptr;
  GravitySplit g = gravity_split(cfg.a, cfg.b);
  Json j = Json::object();
  j["interior_constant"] = {{"multiplier", format_rational(g.interior.multiplier)},
                            {"formal_tokens", g.interior.formal_tokens}};
  j["boundary_constant"] = {{"multiplier", format_rational(g.boundary.multiplier)},
                            {"formal_tokens", g.boundary.formal_tokens}};
  j["summed_over_k"] = g.summed_over_k;
  GaussianRational extr = to_extrinsic(br.total, 4).evaluate(cfg.a, cfg.b);
  j["boundary_times_extrinsic"] = format_gaussian(GaussianRational(g.boundary.multiplier) * extr);
  return j;
}

struct Report {
  Json json;
  std::vector<Check> checks;

  /// 0 when every engine-vs-reference check matches, 2 otherwise.
  int exit_code() const {
    for (const auto& c : checks)
      if (c.is_mismatch())
        return 2;
    return 0;
  }
};

/// Computes one configuration; `golden` may be null, in which case no checks are run.
inline Report build_report(const RunConfig& cfg, GoldenRunner* golden) {
  cfg.validate();
  EvalOptions opt = cfg.options();
  BoundaryResult br = golden ? golden->boundary(cfg.dim, cfg.left, cfg.right)
                             : phi_total(cfg.dim, cfg.left, cfg.right, opt);
  Report r;
  Json& j = r.json;
  j = Json::object();
  j["meta"] = {{"dim", cfg.dim},
               {"left", to_string(cfg.left)},
               {"right", to_string(cfg.right)},
               {"a", format_rational(cfg.a)},
               {"b", format_rational(cfg.b)},
               {"samples", {{"xi", cfg.xi_samples}, {"ab", cfg.ab_samples}}}};
  j["interior"] = interior_json(cfg);

  Json boundary = Json::object();
  boundary["units"] = boundary_units(cfg.dim);
  Json cases = Json::array();
  for (const auto& cr : br.cases) {
    Json c = Json::object();
    c["name"] = cr.c.name;
    c["r"] = cr.c.r;
    c["l"] = cr.c.l;
    c["j"] = cr.c.j;
    c["k"] = cr.c.k;
    c["alpha"] = cr.c.alpha;
    c["prefactor"] = format_gaussian(cr.c.prefactor());
    c["coeffs"] = coeffs_json(cr.value);
    c["expression"] = format_boundary_value(cr.value);
    c["value"] = format_gaussian(cr.value.evaluate(cfg.a, cfg.b));
    cases.push_back(c);
  }
  boundary["cases"] = cases;
  boundary["total"] = value_json(br.total, cfg);
  boundary["extrinsic"] = cfg.dim == 4 ? value_json(to_extrinsic(br.total, 4), cfg) : Json(nullptr);
  j["boundary"] = boundary;

  if (cfg.dim == 4 && cfg.left == cfg.right) {
    const LeibnizResult lr = golden ? golden->leibniz(cfg.left) : leibniz_case_c(4, cfg.left, opt);
    j["leibniz"] = {{"direct", coeffs_json(lr.direct)},
                    {"reduced", coeffs_json(lr.reduced)},
                    {"correction", coeffs_json(lr.correction)},
                    {"via_leibniz", coeffs_json(lr.via_leibniz)},
                    {"paths_agree", lr.direct == lr.via_leibniz}};
  } else {
    j["leibniz"] = nullptr;
  }
  j["gravity"] = gravity_json(cfg, br);

  if (golden)
    r.checks = golden->run_config(cfg.dim, cfg.left, cfg.right);
  Json checks = Json::array();
  std::size_t match = 0, mismatch = 0, consistent = 0, inconsistent = 0;
  for (const auto& c : r.checks) {
    checks.push_back(check_json(c));
    match += c.status == "match";
    mismatch += c.status == "mismatch";
    consistent += c.status == "consistent";
    inconsistent += c.status == "inconsistent";
  }
  j["checks"] = checks;
  j["summary"] = {{"match", match},
                  {"mismatch", mismatch},
                  {"consistent", consistent},
                  {"inconsistent", inconsistent},
                  {"exit_code", r.exit_code()}};
  return r;
}

/// Plain-text rendering of a report.
inline void print_report(const Report& r, std::ostream& os) {
  const Json& j = r.json;
  const Json& m = j["meta"];
  os << "dim " << m["dim"].get<int>() << ", (" << m["left"].get<std::string>() << ", "
     << m["right"].get<std::string>() << "), a = " << m["a"].get<std::string>()
     << ", b = " << m["b"].get<std::string>() << "\n";
  const Json& in = j["interior"];
  if (in["multiplier"].is_null())
    os << "interior: n/a (" << in["reason"].get<std::string>() << ")\n";
  else
    os << "interior: " << in["expression"].get<std::string>() << "\n";
  const Json& bd = j["boundary"];
  os << "boundary cases, in units of " << bd["units"].get<std::string>() << ":\n";
  for (const auto& c : bd["cases"])
    os << "  " << c["name"].get<std::string>() << "  " << c["expression"].get<std::string>() << "  = "
       << c["value"].get<std::string>() << "\n";
  os << "  total  " << bd["total"]["expression"].get<std::string>() << "  = "
     << bd["total"]["value"].get<std::string>() << "\n";
  if (!bd["extrinsic"].is_null())
    os << "extrinsic (" << bd["extrinsic"]["units"].get<std::string>()
       << "): " << bd["extrinsic"]["expression"].get<std::string>() << "\n";
  if (!r.checks.empty()) {
    os << "checks:\n";
    for (const auto& c : r.checks) {
      os << "  " << c.status << "  " << c.label() << "  " << c.kind;
      if (!c.passed())
        os << "  engine: " << c.engine << "  reference: " << c.reference;
      if (!c.detail.empty() && !c.passed())
        os << "  (" << c.detail << ")";
      os << "\n";
    }
  }
}

} // namespace ncwres
