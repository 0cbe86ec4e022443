#include <gtest/gtest.h>

#include "ncwres/verify.hpp"

using namespace ncwres;

namespace {

struct Point {
  ExteriorAlgebra alg;
  BoundaryPoint pt;
  Point(int n, Rational a, Rational b, int s) : alg(n), pt(alg, Params(a, b), unit_tangential(n, s)) {}
};

} // namespace

class SymbolTest : public ::testing::TestWithParam<int> {};

TEST_P(SymbolTest, ClosedFormsAndResidual) {
  const int n = GetParam();
  for (auto& [a, b] : sample_points(5))
    for (int s = 0; s < 2; ++s) {
      Point p(n, a, b, s);
      for (Operator op : {Operator::D, Operator::Dstar}) {
        OperatorSymbols sy = build_symbols(p.pt, op);
        EXPECT_EQ(sy.q1.value, q1_closed_form(p.pt, op));
        EXPECT_EQ(sy.q1.normal_derivative(), dxn_q1_closed_form(p.pt, op));
        EXPECT_EQ(sy.q2.value, q2_closed_form(p.pt, op));
        EXPECT_TRUE(composition_residual(sy.p1, sy.p0, sy.q1, sy.q2, n).is_zero());
      }
    }
}

TEST_P(SymbolTest, PrincipalInverse) {
  // q_-1 p_1 = 1 at sampled xi_n
  const int n = GetParam();
  Point p(n, Rational(2), Rational(3), 1);
  OperatorSymbols sy = build_symbols(p.pt, Operator::D);
  for (const auto& x : inversion_sample_points())
    EXPECT_EQ(evaluate(sy.q1.value, x) * evaluate(sy.p1.value, x), p.alg.identity());
}

TEST_P(SymbolTest, PrincipalSquare) {
  // p_1^2 = +ab |xi|^2
  const int n = GetParam();
  Point p(n, Rational(-2), Rational(5, 3), 0);
  OperatorSymbols sy = build_symbols(p.pt, Operator::Dstar);
  GaussianRational x(Rational(3, 7));
  Endo p1 = evaluate(sy.p1.value, x);
  GaussianRational norm = GaussianRational(1) + x * x;
  EXPECT_EQ(p1 * p1, ScalarRing(GaussianRational(p.pt.ab()) * norm) * p.alg.identity());
}

TEST_P(SymbolTest, SwapMapsDToDstar) {
  const int n = GetParam();
  for (auto& [a, b] : sample_points(5)) {
    Point p(n, a, b, 2), q(n, b, a, 2);
    OperatorSymbols d = build_symbols(p.pt, Operator::D), s = build_symbols(q.pt, Operator::Dstar);
    EXPECT_EQ(d.q1.value, s.q1.value);
    EXPECT_EQ(d.q2.value, s.q2.value);
    EXPECT_EQ(d.p0.value, s.p0.value);
  }
}

TEST_P(SymbolTest, Orders) {
  const int n = GetParam();
  Point p(n, Rational(1), Rational(2), 0);
  OperatorSymbols sy = build_symbols(p.pt, Operator::D);
  EXPECT_EQ(h_degree(sy.q1.value), 0);
  EXPECT_EQ(h_degree(sy.q2.value), 1);
  EXPECT_EQ(h_degree(sy.q1.normal_derivative()), 1);
}

INSTANTIATE_TEST_SUITE_P(Dims, SymbolTest, ::testing::Values(3, 4));

TEST(BoundaryPoint, Validation) {
  ExteriorAlgebra alg(4);
  EXPECT_THROW(BoundaryPoint(alg, Params(1, 1), Covector::normal(4)), InvalidParameter);
  EXPECT_THROW(BoundaryPoint(alg, Params(1, 1), unit_tangential(3, 0)), DimensionMismatch);
}
