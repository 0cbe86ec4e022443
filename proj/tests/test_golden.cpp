#include <gtest/gtest.h>

#include "ncwres/expr.hpp"
#include "ncwres/golden.hpp"

using namespace ncwres;

namespace {

GoldenRunner& runner() {
  static GoldenRunner g(load_golden(NCWRES_DEFAULT_GOLDEN), EvalOptions{2, 6, true});
  return g;
}

} // namespace

TEST(GoldenFile, LoadsAndKindsAreKnown) {
  const GoldenFile& f = runner().file();
  EXPECT_EQ(f.version, 1);
  EXPECT_GT(f.entries.size(), 50u);
  const auto& kinds = golden_kinds();
  for (const auto& e : f.entries)
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), e["kind"].get<std::string>()), kinds.end());
}

TEST(GoldenFile, RejectsBadInput) {
  EXPECT_THROW(parse_golden("{"), ParseError);
  EXPECT_THROW(parse_golden(R"({"version": 1, "entries": [{"eq": "x", "kind": "nope", "dim": 4}]})"), ParseError);
  EXPECT_THROW(load_golden("/nonexistent/golden.json"), Error);
}

TEST(GoldenFile, ValueParsing) {
  BoundaryValue v = parse_value(Json::parse(R"({"a2inv": "-1/8", "b2inv": "11/8"})"));
  EXPECT_EQ(v, BoundaryValue::make(GaussianRational(Rational(-1, 8)), GaussianRational(Rational(11, 8)), {}, {}));
  EXPECT_THROW(parse_value(Json::parse(R"({"c2inv": "1"})")), ParseError);
}

TEST(Expr, Arithmetic) {
  ExteriorAlgebra alg(4);
  expr::Context ctx(alg, Params(2, 3), unit_tangential(4, 0));
  EXPECT_TRUE(expr::equal(expr::evaluate("(1+xi^2)^-1*(xi-i)*(xi+i)", ctx), expr::evaluate("1", ctx), 4));
  EXPECT_TRUE(expr::equal(expr::evaluate("a*b", ctx), expr::evaluate("6", ctx), 4));
  EXPECT_TRUE(expr::equal(expr::evaluate("ct_t*ct_t", ctx), expr::evaluate("-a*b*Id", ctx), 4));
  EXPECT_TRUE(expr::equal(expr::evaluate("tr(Id)", ctx), expr::evaluate("16", ctx), 4));
  EXPECT_TRUE(expr::equal(expr::evaluate("sum_i(tr(eps_i*iota_i))", ctx), expr::evaluate("24", ctx), 4));
  EXPECT_THROW(expr::evaluate("frob(1)", ctx), ParseError);
  EXPECT_THROW(expr::evaluate("1+", ctx), ParseError);
}

TEST(Expr, EngineAtoms) {
  ExteriorAlgebra alg(4);
  expr::Context ctx(alg, Params(2, 3), unit_tangential(4, 1));
  EXPECT_TRUE(expr::equal(expr::evaluate("q1_D", ctx), expr::evaluate("i*ct_xi/(a*b*(1+xi^2))", ctx), 4));
  EXPECT_TRUE(expr::equal(expr::evaluate("p0conn_D", ctx), expr::evaluate("p0t", ctx), 4));
}

TEST(Runner, LookupByKind) {
  EXPECT_FALSE(runner().find("case").empty());
  EXPECT_FALSE(runner().find("interior").empty());
  EXPECT_TRUE(runner().find("no_such_kind").empty());
}

TEST(Runner, SamePairEntries) {
  for (const Json* e : runner().find("case")) {
    auto pr = entry_pair(*e);
    if ((*e)["dim"] != 4 || pr->first != Operator::D || pr->second != Operator::D)
      continue;
    // a(I), a(II), a(III) agree with the engine for this pairing
    if ((*e)["r"] == -1 && (*e)["l"] == -1)
      EXPECT_TRUE(runner().run(*e)[0].passed()) << runner().run(*e)[0].detail;
  }
}

TEST(Runner, InteriorEntry) {
  for (const Json* e : runner().find("interior"))
    for (const auto& c : runner().run(*e))
      EXPECT_TRUE(c.passed()) << c.detail;
}

TEST(Runner, ConsistencyFlagOnPrintedTotal) {
  bool flagged = false;
  for (const Json* e : runner().find("total"))
    for (const auto& c : runner().run(*e))
      if (c.kind == "printed_consistency") {
        EXPECT_EQ(c.status, "inconsistent");
        EXPECT_NE(c.detail.find("b2inv"), std::string::npos);
        flagged = true;
      }
  EXPECT_TRUE(flagged);
}
