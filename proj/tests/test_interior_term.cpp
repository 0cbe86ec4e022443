#include <gtest/gtest.h>

#include "ncwres/interior_term.hpp"

using namespace ncwres;

TEST(Interior, Binomials) {
  EXPECT_EQ(binom(4, 2), Rational(6));
  EXPECT_EQ(binom(2, -1), Rational(0));
  EXPECT_EQ(binom(2, 3), Rational(0));
}

TEST(Interior, DualPathAllK) {
  for (auto& [a, b] : sample_points(12))
    for (int k = 0; k <= 4; ++k)
      EXPECT_EQ(c1_coeff(k, a, b), c1_coeff_resummed(k, a, b));
  EXPECT_THROW(c1_coeff(5, 1, 1), InvalidParameter);
}

TEST(Interior, SumOverK) {
  for (auto& [a, b] : sample_points(10))
    EXPECT_EQ(c1_sum(a, b), Rational(-2, 3) * (1 / (a * a) + 1 / (b * b)));
}

TEST(Interior, SamePairScaling) {
  for (auto& [a, b] : sample_points(10)) {
    FormalExpression f = interior_wres(Pair::DD, a, b);
    EXPECT_EQ(f.multiplier * a * b, Rational(8, 3));
    EXPECT_EQ(f.formal_tokens, (std::vector<std::string>{"Omega_4", "int_M(R dvol)"}));
  }
  EXPECT_EQ(interior_wres(Pair::DD, 2, 3).multiplier, 2 * interior_wres(Pair::DD, 4, 3).multiplier);
}

TEST(Interior, MixedPair) {
  FormalExpression f = interior_wres(Pair::DDstar, 1, 1);
  EXPECT_EQ(f.multiplier, Rational(-16, 3));
  EXPECT_EQ(f.text(), "-16/3*pi*int_M(R dvol)");
  EXPECT_THROW(pair_of(Operator::Dstar, Operator::D), ScopeError);
}

TEST(Gravity, Constants) {
  GravitySplit g = gravity_split(1, 1);
  EXPECT_EQ(g.boundary.multiplier, Rational(-12, 23));
  EXPECT_EQ(g.interior.multiplier, Rational(-3, 256));
  GravitySplit gk = gravity_split(1, 1, 2);
  EXPECT_FALSE(gk.summed_over_k);
  EXPECT_EQ(gk.interior.multiplier, 1 / (64 * c1_coeff(2, 1, 1)));
}
