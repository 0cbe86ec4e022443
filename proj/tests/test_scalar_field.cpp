#include <gtest/gtest.h>

#include "ncwres/verify.hpp"

using namespace ncwres;

namespace {
const GaussianRational I = GaussianRational::i();
RationalFn S(int k) { return RationalFn::inv_norm_power(k); }
} // namespace

TEST(GaussianRational, Field) {
  GaussianRational z(Rational(3, 2), Rational(-1, 3));
  EXPECT_EQ(z * z.inverse(), GaussianRational(1));
  EXPECT_EQ(I * I, GaussianRational(-1));
  EXPECT_EQ(format_gaussian(z), "3/2-1/3*i");
  EXPECT_EQ(parse_gaussian("3/2-1/3*i"), z);
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("-7/21"), Rational(-1, 3));
  EXPECT_EQ(parse_rational("4"), Rational(4));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(ScalarRing, DegreeCap) {
  ScalarRing h = ScalarRing::h();
  EXPECT_EQ((h * h).degree(), 2);
  EXPECT_THROW(h * h * h, HDegreeOverflow);
}

TEST(RationalFn, NormalForm) {
  // (xi - i)(xi + i) / (1 + xi^2)^2 reduces to 1 / (1 + xi^2)
  RationalFn x = RationalFn::xi();
  RationalFn f = (x * x + RationalFn(1)) * S(2);
  EXPECT_EQ(f, S(1));
  EXPECT_EQ(f.plus_order(), 1);
  EXPECT_EQ(f.minus_order(), 1);
}

TEST(PiPlus, InverseSquareNorm) {
  // pi+ [1/(1+xi^2)^2] = -(i xi + 2) / (4 (xi - i)^2)
  RationalFn x = RationalFn::xi();
  RationalFn want = RationalFn(-1) * (RationalFn(I) * x + RationalFn(2)) *
                    RationalFn(GaussianRational(Rational(1, 4))) * RationalFn::pole_power(Pole::Plus, 2);
  EXPECT_EQ(pi_plus(S(2)), want);
}

TEST(PiPlus, FirstOrder) {
  // pi+ [1/(1+xi^2)] = (1/(2i)) / (xi - i)
  EXPECT_EQ(pi_plus(S(1)), RationalFn(GaussianRational(Rational(0), Rational(-1, 2))) *
                               RationalFn::pole_power(Pole::Plus, 1));
}

TEST(PiPlus, PropertiesRandom) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 60; ++t) {
    RationalFn f = gen::rational_fn(rng, t % 5, (t / 5) % 4, t % 2);
    RationalFn p = pi_plus(f);
    EXPECT_EQ(pi_plus(p), p);
    EXPECT_TRUE(pi_plus(f - p).is_zero() || (f - p).degree_at_infinity() >= 0);
    EXPECT_EQ(recompose(pf_decompose(f)), f);
    EXPECT_TRUE(pi_plus(gen::lower_half(rng)).is_zero());
  }
}

TEST(PiPlus, Linear) {
  std::mt19937 rng(7);
  for (int t = 0; t < 30; ++t) {
    RationalFn f = gen::rational_fn(rng, 2, 3), g = gen::rational_fn(rng, 3, 1);
    RationalFn c(gen::gaussian(rng));
    EXPECT_EQ(pi_plus(f + c * g), pi_plus(f) + c * pi_plus(g));
  }
}

TEST(Integration, LineIntegrals) {
  // int 1/(1+xi^2) = pi, int 1/(1+xi^2)^2 = pi/2, int xi^2/(1+xi^2)^3 = pi/8
  RationalFn x = RationalFn::xi();
  EXPECT_EQ(integrate_line(S(1)), ScalarRing(1));
  EXPECT_EQ(integrate_line(S(2)), ScalarRing(Rational(1, 2)));
  EXPECT_EQ(integrate_line(x * x * S(3)), ScalarRing(Rational(1, 8)));
  EXPECT_TRUE(integrate_line(x * S(2)).is_zero());
  EXPECT_THROW(integrate_line(x * S(1)), IntegrabilityError);
}

TEST(Integration, SumOfResidues) {
  // residues at +i and -i cancel when the integrand decays like xi^-2
  std::mt19937 rng(99);
  for (int t = 0; t < 30; ++t) {
    RationalFn f = gen::rational_fn(rng, 1 + t % 3, 1 + t % 4, -1);
    if (f.degree_at_infinity() > -2)
      continue;
    auto pf = pf_decompose(f);
    ScalarRing plus = pf.plus.empty() ? ScalarRing() : pf.plus[0];
    ScalarRing minus = pf.minus.empty() ? ScalarRing() : pf.minus[0];
    EXPECT_EQ(residue_plus(f), plus);
    EXPECT_TRUE((plus + minus).is_zero());
  }
}

TEST(Differentiation, LeibnizRule) {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    RationalFn f = gen::rational_fn(rng, 2, 1), g = gen::rational_fn(rng, 1, 2);
    EXPECT_EQ(diff_xi(f * g), diff_xi(f) * g + f * diff_xi(g));
  }
}

TEST(Differentiation, Evaluation) {
  RationalFn x = RationalFn::xi();
  EXPECT_EQ(diff_xi(S(1)), RationalFn(-2) * x * S(2));
  EXPECT_EQ(S(1)(GaussianRational(2)), ScalarRing(Rational(1, 5)));
}
