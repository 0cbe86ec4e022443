#include <gtest/gtest.h>

#include "ncwres/verify.hpp"

using namespace ncwres;

namespace {

const EvalOptions kOpt{1, 6, true};

const BoundaryResult& result(int n, Operator l, Operator r) {
  static std::map<std::tuple<int, Operator, Operator>, BoundaryResult> cache;
  auto key = std::make_tuple(n, l, r);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, phi_total(n, l, r, kOpt)).first;
  return it->second;
}

BoundaryValue v(Rational a2, Rational b2, Rational ab = 0) { return BoundaryValue::make(a2, b2, ab, 0); }

} // namespace

TEST(Cases, Enumeration) {
  auto c4 = enumerate_cases(4);
  ASSERT_EQ(c4.size(), 5u);
  std::vector<std::string> names;
  for (const auto& c : c4) {
    names.push_back(c.name);
    EXPECT_EQ(c.weight(), 3);
  }
  EXPECT_EQ(names, (std::vector<std::string>{"a(I)", "a(II)", "a(III)", "b", "c"}));
  EXPECT_EQ(c4[0].prefactor(), GaussianRational(-1));
  EXPECT_EQ(c4[1].prefactor(), GaussianRational(Rational(-1, 2)));
  EXPECT_EQ(c4[3].prefactor(), -GaussianRational::i());
  auto c3 = enumerate_cases(3);
  ASSERT_EQ(c3.size(), 1u);
  EXPECT_EQ(c3[0].prefactor(), -GaussianRational::i());
  EXPECT_THROW(enumerate_cases(5), ScopeError);
}

TEST(Cases, MixedPairDimensionFour) {
  const auto& br = result(4, Operator::D, Operator::Dstar);
  EXPECT_TRUE(br.cases[0].value.is_zero());
  EXPECT_EQ(br.cases[1].value, v(Rational(-1, 2), -1));
  EXPECT_EQ(br.cases[2].value, v(1, Rational(1, 2)));
  EXPECT_EQ(br.total, br.cases[0].value + br.cases[1].value + br.cases[2].value + br.cases[3].value +
                          br.cases[4].value);
}

TEST(Cases, SamePairCancels) {
  const auto& br = result(4, Operator::D, Operator::D);
  EXPECT_EQ(br.cases[1].value, v(0, 0, Rational(-3, 2)));
  EXPECT_EQ(br.cases[2].value, v(0, 0, Rational(3, 2)));
  EXPECT_EQ(br.cases[3].value + br.cases[4].value, BoundaryValue{});
  EXPECT_TRUE(br.total.is_zero());
}

TEST(Cases, AdjointPairIsSwap) {
  const auto& x = result(4, Operator::D, Operator::Dstar);
  const auto& y = result(4, Operator::Dstar, Operator::D);
  for (std::size_t k = 0; k < x.cases.size(); ++k)
    EXPECT_EQ(y.cases[k].value, x.cases[k].value.swapped()) << x.cases[k].c.name;
}

TEST(Cases, IndependentOfTangentialDirection) {
  auto c = enumerate_cases(4)[3];
  PointIntegrands one = point_integrands(4, {c}, Operator::D, Operator::Dstar, 2, 3, 1);
  PointIntegrands many = point_integrands(4, {c}, Operator::D, Operator::Dstar, 2, 3, 4);
  EXPECT_EQ(one.cases[0], many.cases[0]);
}

TEST(Cases, HeldOutPoint) {
  const auto& br = result(3, Operator::D, Operator::Dstar);
  const auto& c = br.cases[0];
  EXPECT_EQ(case_scalar(3, c.c, Operator::D, Operator::Dstar, Rational(5), Rational(-4, 9)),
            c.value.evaluate(Rational(5), Rational(-4, 9)));
}

TEST(Leibniz, PathsAgree) {
  for (Operator op : {Operator::D, Operator::Dstar}) {
    LeibnizResult l = leibniz_case_c(4, op, kOpt);
    EXPECT_EQ(l.direct, l.via_leibniz);
    EXPECT_EQ(l.direct, result(4, op, op).cases[3].value);
    EXPECT_EQ(l.reduced, result(4, op, op).cases[4].value);
  }
  EXPECT_THROW(leibniz_case_c(3, Operator::D, kOpt), ScopeError);
}

TEST(Extrinsic, Conversion) {
  BoundaryValue x = to_extrinsic(v(3, 6), 4);
  EXPECT_EQ(x, v(-2, -4));
  EXPECT_EQ(x.units, "pi*K*Omega_3");
  EXPECT_THROW(to_extrinsic(x, 3), ScopeError);
}

TEST(Serial, MatchesThreaded) {
  EvalOptions serial = kOpt;
  serial.parallel = false;
  EXPECT_EQ(phi_total(3, Operator::D, Operator::Dstar, serial).total, result(3, Operator::D, Operator::Dstar).total);
}
