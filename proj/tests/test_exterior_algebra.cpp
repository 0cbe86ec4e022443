#include <gtest/gtest.h>

#include "ncwres/verify.hpp"

using namespace ncwres;

TEST(ExteriorAlgebra, BasisSizeAndOrder) {
  for (int n = 1; n <= 5; ++n) {
    ExteriorAlgebra alg(n);
    EXPECT_EQ(alg.dim(), std::size_t{1} << n);
    EXPECT_EQ(alg.basis().front().grade(), 0);
    EXPECT_EQ(alg.basis().back().grade(), n);
  }
  ExteriorAlgebra alg(3);
  std::vector<std::vector<int>> want = {{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  for (std::size_t k = 0; k < want.size(); ++k)
    EXPECT_EQ(alg.basis()[k].indices, want[k]);
}

TEST(ExteriorAlgebra, WedgeSigns) {
  ExteriorAlgebra alg(3);
  Endo e1 = alg.eps(Covector::basis(3, 1)), e2 = alg.eps(Covector::basis(3, 2));
  // e2 ^ e1 = -e1 ^ e2
  EXPECT_EQ(e1 * e2, -(e2 * e1));
  EXPECT_FALSE((e1 * e2).is_zero());
}

TEST(ExteriorAlgebra, InteriorIsTranspose) {
  ExteriorAlgebra alg(4);
  for (const auto& v : gen::covectors(4, 4))
    EXPECT_EQ(alg.iota(v), alg.eps(v).transpose());
}

TEST(ExteriorAlgebra, Anticommutator) {
  for (int n : {3, 4}) {
    ExteriorAlgebra alg(n);
    auto vs = gen::covectors(n, 3);
    for (const auto& u : vs)
      for (const auto& v : vs) {
        Endo lhs = alg.eps(u) * alg.iota(v) + alg.iota(v) * alg.eps(u);
        EXPECT_EQ(lhs, ScalarRing(pairing(u, v)) * alg.identity());
      }
  }
}

TEST(ExteriorAlgebra, CliffordSquares) {
  ExteriorAlgebra alg(4);
  Rational a(2), b(-3, 5);
  for (const auto& v : gen::covectors(4, 3)) {
    CliffordActions ca = clifford_actions(alg, a, b, v);
    ScalarRing nv(v.norm2());
    EXPECT_EQ(ca.c * ca.c, -nv * alg.identity());
    EXPECT_EQ(ca.c_hat * ca.c_hat, nv * alg.identity());
    EXPECT_EQ(ca.c_tilde * ca.c_tilde, ScalarRing(-a * b * v.norm2()) * alg.identity());
    EXPECT_EQ(ca.c_bar * ca.c_bar, ScalarRing(-a * b * v.norm2()) * alg.identity());
  }
}

TEST(ExteriorAlgebra, TwistSwap) {
  ExteriorAlgebra alg(3);
  Params p(Rational(3), Rational(7, 2));
  for (const auto& v : gen::covectors(3, 3))
    EXPECT_EQ(twisted_action(alg, p, Operator::Dstar, v), twisted_action(alg, p.swapped(), Operator::D, v));
}

TEST(ExteriorAlgebra, ConnectionTermMatchesFormula) {
  for (int n : {3, 4}) {
    ExteriorAlgebra alg(n);
    for (auto& [a, b] : sample_points(4))
      for (Operator op : {Operator::D, Operator::Dstar})
        EXPECT_EQ(p0_matrix(alg, Params(a, b), op), p0_from_connection(alg, Params(a, b), op));
  }
}

TEST(ExteriorAlgebra, UnitTangentials) {
  for (int k = 0; k < 12; ++k) {
    Covector t = unit_tangential(4, k);
    EXPECT_EQ(t.norm2(), Rational(1));
    EXPECT_EQ(sgn(t.components.back()), 0);
  }
}

TEST(ExteriorAlgebra, Errors) {
  ExteriorAlgebra alg(3);
  EXPECT_THROW(alg.eps(Covector::basis(4, 1)), DimensionMismatch);
  EXPECT_THROW(Params(Rational(0), Rational(1)), InvalidParameter);
  EXPECT_THROW(parse_operator("Dbar"), ParseError);
}
