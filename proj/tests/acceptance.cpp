// Acceptance criteria 1-10, one PASS/FAIL line each, exact comparisons only.
//
//   acceptance            run all
//   acceptance 4 6        run the listed criteria
//
// Exit status is 0 only when every requested criterion passes.

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ncwres/report.hpp"
#include "ncwres/verify.hpp"

#ifndef NCWRES_DEFAULT_GOLDEN
#define NCWRES_DEFAULT_GOLDEN "data/golden.json"
#endif

using namespace ncwres;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void take(const std::vector<Check>& checks) {
    for (const auto& c : checks)
      require(c.passed(), c.label() + " " + c.kind + ": " + c.engine + " vs " + c.reference);
  }
};

GoldenRunner& runner() {
  static GoldenRunner g(load_golden(NCWRES_DEFAULT_GOLDEN), EvalOptions{3, kDefaultParameterSamples, true});
  return g;
}

bool in_set(const Json& e, const std::string& set) { return e.value("set", std::string{}) == set; }

bool entry_is(const Json& e, const std::string& kind, int dim, Operator l, Operator r) {
  auto pr = entry_pair(e);
  return e["kind"] == kind && e["dim"].get<int>() == dim && pr && pr->first == l && pr->second == r;
}

const Check* find_kind(const std::vector<Check>& cs, const std::string& kind) {
  for (const auto& c : cs)
    if (c.kind == kind)
      return &c;
  return nullptr;
}

// 1. Clifford trace identities, including the vanishing ones, over >= 10 xi' and >= 5 (a, b).
Outcome clifford_traces() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& e : runner().file().entries) {
    if (!in_set(e, "clifford_traces"))
      continue;
    ++n;
    o.require(e.value("xi_samples", 0) >= 10 && e.value("ab_samples", 0) >= 5,
              "entry " + e["eq"].get<std::string>() + " samples too few points");
    o.take(runner().run(e));
  }
  o.require(n == 16, "expected 8 nonzero and 8 vanishing traces, found " + std::to_string(n));
  return o;
}

// 2. pi+ of 1/(1+xi^2)^2, idempotence, annihilation of H^-.
Outcome projection() {
  Outcome o;
  o.take(runner().run_where([](const Json& e) { return in_set(e, "projection_closed_forms"); }));
  o.take(projection_invariants());
  return o;
}

// 3. q_-1, q_-2 closed forms, zero composition residual, a <-> b swap.
Outcome parametrix() {
  Outcome o;
  o.take(runner().run_where([](const Json& e) { return in_set(e, "parametrix_closed_forms"); }));
  o.take(symbol_invariants());
  return o;
}

// 4. n = 4 (D, D*): cases match, or exit 2 with a diff naming each disagreeing entry.
Outcome mixed_cases() {
  Outcome o;
  RunConfig cfg;
  cfg.dim = 4;
  cfg.left = Operator::D;
  cfg.right = Operator::Dstar;
  Report rep = build_report(cfg, &runner());
  bool cases_match = true;
  for (const auto& c : rep.checks)
    if (c.kind == "case" && !c.passed())
      cases_match = false;
  if (!cases_match) {
    o.require(rep.exit_code() == 2, "disagreeing cases but exit code " + std::to_string(rep.exit_code()));
    for (const auto& j : rep.json["checks"])
      if (j["status"] == "mismatch")
        o.require(!j["eq"].get<std::string>().empty() && j.contains("engine") && j.contains("paper"),
                  "diff entry without an eq key");
    o.require(rep.json["summary"]["exit_code"] == 2, "JSON summary does not record exit code 2");
  }
  o.require(find_kind(rep.checks, "total") != nullptr, "total not compared with the printed total");
  o.require(find_kind(rep.checks, "total_vs_case_sum") != nullptr, "total not compared with the case sum");
  const Check* cons = find_kind(rep.checks, "printed_consistency");
  o.require(cons && cons->status == "inconsistent" && cons->detail.find("b2inv: 23/8 vs 7/8") != std::string::npos,
            "printed total vs printed case sum inconsistency not flagged");
  for (const auto& c : rep.checks)
    if (c.kind == "case" && !c.passed())
      o.notes.push_back("reported " + c.label() + " " + c.detail);
  return o;
}

// 5. (D, D): case values, zero total, Leibniz path equals direct path.
Outcome same_pair_cases() {
  Outcome o;
  o.take(runner().run_where([](const Json& e) {
    return entry_is(e, "case", 4, Operator::D, Operator::D) || entry_is(e, "total", 4, Operator::D, Operator::D);
  }));
  const LeibnizResult& l = runner().leibniz(Operator::D);
  o.require(l.direct == l.via_leibniz, "Leibniz path disagrees with the direct path");
  o.require(runner().boundary(4, Operator::D, Operator::D).total.is_zero(), "(D, D) total is not zero");
  return o;
}

// 6. n = 3 total and the residue oracle.
Outcome three_dim() {
  Outcome o;
  o.take(runner().run_where([](const Json& e) {
    return entry_is(e, "total", 3, Operator::D, Operator::Dstar) || entry_is(e, "residue", 3, Operator::D, Operator::Dstar);
  }));
  // second route to the residue at +i: minus the residue at -i, the integrand decays like xi^-2
  for (const Json* e : runner().find("residue")) {
    if ((*e)["dim"] != 3)
      continue;
    BoundaryValue via_minus = runner().scalar_functional(*e, [](const RationalFn& f) {
      auto pf = pf_decompose(f);
      return pf.minus.empty() ? GaussianRational() : -pf.minus[0].coeff(0);
    });
    o.require(via_minus == parse_value((*e)["value"]), "residue at -i route disagrees: " + format_boundary_value(via_minus));
  }
  return o;
}

// 7. Extrinsic conversion of the printed total.
Outcome extrinsic() {
  Outcome o;
  for (const Json* e : runner().find("extrinsic")) {
    for (const auto& c : runner().run(*e))
      if (c.kind == "extrinsic_conversion")
        o.take({c});
  }
  BoundaryValue v = BoundaryValue::make(Rational(23, 8), Rational(23, 8), 0, 0);
  BoundaryValue k = to_extrinsic(v, 4);
  o.require(k == BoundaryValue::make(Rational(-23, 12), Rational(-23, 12), 0, 0), "23/8 does not map to -23/12");
  return o;
}

// 8. c1 dual path and the (D, D) interior scaling.
Outcome interior() {
  Outcome o;
  for (auto& [a, b] : sample_points(12))
    for (int k = 0; k <= 4; ++k)
      o.require(c1_coeff(k, a, b) == c1_coeff_resummed(k, a, b), "c1 paths differ");
  for (auto& [a, b] : sample_points(12)) {
    FormalExpression f = interior_wres(Pair::DD, a, b);
    o.require(f.multiplier * a * b == Rational(8, 3), "(D, D) interior is not 8/(3ab)");
    o.require(f.formal_tokens.size() == 2 && f.formal_tokens[0] == "Omega_4", "(D, D) interior tokens");
  }
  o.take(runner().run_where([](const Json& e) { return e["kind"] == "interior"; }));
  return o;
}

// 9. Reconstruction span and zero residual at held-out points.
Outcome reconstruction() {
  Outcome o;
  const EvalOptions opt{3, 6, true};
  const auto held = sample_points(9);
  for (auto [n, l, r] : {std::tuple{4, Operator::D, Operator::Dstar}, std::tuple{4, Operator::D, Operator::D},
                         std::tuple{3, Operator::D, Operator::Dstar}}) {
    const BoundaryResult& br = runner().boundary(n, l, r);
    for (const auto& cr : br.cases) {
      std::string tag = std::to_string(n) + " " + to_string(l) + "," + to_string(r) + " " + cr.c.name;
      o.require(cr.value.constant().is_zero(), tag + ": constant term outside the span");
      for (std::size_t p = opt.ab_samples; p < held.size(); ++p) {
        auto [a, b] = held[p];
        o.require(case_scalar(n, cr.c, l, r, a, b) == cr.value.evaluate(a, b), tag + ": held-out residual");
      }
    }
  }
  return o;
}

// 10. Byte-identical JSON from independent runs. Threaded against serial is covered by the CLI tests.
Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  cfg.dim = 4;
  cfg.left = Operator::D;
  cfg.right = Operator::D;
  cfg.a = Rational(2);
  cfg.b = Rational(3);
  auto dump = [&] {
    GoldenRunner g(load_golden(NCWRES_DEFAULT_GOLDEN), cfg.options());
    return build_report(cfg, &g).json.dump(2);
  };
  std::string x = dump(), y = dump();
  o.require(!x.empty() && x == y, "two runs differ");
  return o;
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Outcome()>>> m = {
      {1, {"Clifford trace identities", clifford_traces}},
      {2, {"positive projection", projection}},
      {3, {"parametrix symbols", parametrix}},
      {4, {"n=4 (D, D*) case values", mixed_cases}},
      {5, {"n=4 (D, D) case values and Leibniz path", same_pair_cases}},
      {6, {"n=3 boundary term", three_dim}},
      {7, {"extrinsic conversion", extrinsic}},
      {8, {"interior coefficients", interior}},
      {9, {"coefficient reconstruction", reconstruction}},
      {10, {"deterministic JSON", determinism}},
  };
  return m;
}

} // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i)
    which.push_back(std::stoi(argv[i]));
  if (which.empty())
    for (const auto& [k, v] : criteria())
      which.push_back(k);
  bool all = true;
  for (int k : which) {
    auto it = criteria().find(k);
    if (it == criteria().end()) {
      std::cerr << "unknown criterion " << k << "\n";
      return 1;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << it->second.first << "\n";
    for (const auto& n : o.notes)
      std::cout << "    " << n << "\n";
  }
  return all ? 0 : 1;
}
