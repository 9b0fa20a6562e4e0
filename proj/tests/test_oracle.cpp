#include <gtest/gtest.h>

#include "support.hpp"

using namespace bilip;
using namespace testing_support;

TEST(Oracle, SamplingOnTheBcFamily) {
  const BivarPoly f = parse_poly(kBc);
  for (const auto& a : polar_arcs(f).arcs)
    EXPECT_EQ(dgr_sampling(f, a.arc, std::vector<Rational>{3, 4, 5, 6, 7}), 5);
}

TEST(Oracle, SamplingArbitratesTheTwoArcGradientDegree) {
  const BivarPoly f = parse_poly(kTwoArc);
  for (const auto& a : polar_arcs(f).arcs) {
    const Rational s = dgr_sampling(f, a.arc, std::vector<Rational>{2, 5, Rational(11, 2), 6, 7});
    EXPECT_EQ(s, 6);
    EXPECT_EQ(s, a.dgr);
    // at y^(11/2) the perturbation still lowers the gradient order
    const Rational cap = 20;
    EXPECT_LT(gradient_order(f, a.arc, unit_circle_point(Rational(2, 9)), Rational(11, 2), cap),
              gradient_order(f, a.arc, unit_circle_point(Rational(2, 9)), 7, cap));
  }
}

TEST(Oracle, SamplingOnANonTangentialArc) {
  const BivarPoly f = parse_poly("x^2 + x*y + y^5");
  const auto arcs = polar_arcs(f).arcs;
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_EQ(dgr_sampling(f, arcs[0].arc, std::vector<Rational>{1, Rational(3, 2), 2, 3}), 1);
}

TEST(Oracle, CoarseGridIsReported) {
  const BivarPoly f = parse_poly(kTwoArc);
  const auto arcs = polar_arcs(f).arcs;
  try {
    dgr_sampling(f, arcs[0].arc, std::vector<Rational>{2, 3});
    FAIL() << "expected GridTooCoarse";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooCoarse);
  }
}

TEST(Oracle, SamplingAgreesWithTheSupportMethod) {
  std::vector<std::string> germs = corpus();
  for (const auto& s : admissible_templates(71, 20)) germs.push_back(s);
  for (const auto& s : germs) {
    const BivarPoly f = parse_poly(s);
    for (const auto& a : polar_arcs(f).arcs) EXPECT_EQ(dgr_sampling(f, a.arc), a.dgr) << s << " arc " << a.id;
  }
}

TEST(Oracle, SamplingDoesNotDependOnTheSeed) {
  const BivarPoly f = parse_poly(kBc);
  for (const auto& a : polar_arcs(f).arcs)
    for (std::uint64_t seed : {1u, 2u, 99u}) EXPECT_EQ(dgr_sampling(f, a.arc, std::nullopt, 5, seed), 5);
}

TEST(Oracle, OrderSums) {
  EXPECT_EQ(order_sum_check(parse_poly(kTwoArc)).polar_sum, 24);
  EXPECT_EQ(order_sum_check(parse_poly(kTwoArc)).resultant_order, 24);
  EXPECT_EQ(order_sum_check(parse_poly(kBc)).polar_sum, 18);
  EXPECT_EQ(order_sum_check(parse_poly(kBc)).resultant_order, 18);
  EXPECT_EQ(order_sum_check(parse_poly("x^2 - y^3")).resultant_order, 3);
}

TEST(Oracle, OrderSumsAgreeWithTheCofactorResultant) {
  std::vector<std::string> germs = corpus();
  for (const auto& s : admissible_templates(72, 25)) germs.push_back(s);
  for (const auto& s : germs) {
    const BivarPoly f = parse_poly(s);
    OrderSum sum;
    try {
      sum = order_sum_check(f);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::PreconditionNotMet) << s;
      continue;
    }
    EXPECT_TRUE(sum.holds()) << s;
    EXPECT_EQ(sum.resultant_order, resultant_order_reference(f, f.dx())) << s;
  }
}

TEST(Oracle, OrderSumPreconditions) {
  try {
    order_sum_check(parse_poly("x^2 + y^2 + x^3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionNotMet);
  }
}

TEST(Oracle, UnitCirclePointsAreExactAndUnimodular) {
  Gen g(73);
  for (int n = 0; n < 50; ++n) {
    const Scalar c = unit_circle_point(g.rational(20, 20));
    ASSERT_TRUE(c.is_exact());
    EXPECT_TRUE(identical(c * c.conj(), Scalar(1)));
  }
}

TEST(Oracle, ScaleAndShearCompose) {
  Gen g(74);
  for (int n = 0; n < 30; ++n) {
    const BivarPoly f = g.poly(6, 6);
    const Scalar a = g.nonzero_gaussian(), b = g.nonzero_gaussian(), l = g.gaussian(), m = g.gaussian();
    EXPECT_EQ(transform_germ(transform_germ(f, {Transform::Scale, a}), {Transform::Scale, b}),
              transform_germ(f, {Transform::Scale, a * b}));
    EXPECT_EQ(transform_germ(transform_germ(f, {Transform::Shear, l}), {Transform::Shear, m}),
              transform_germ(f, {Transform::Shear, l + m}));
  }
}

TEST(Oracle, SelftestPasses) {
  const auto rows = run_selftest();
  EXPECT_GE(rows.size(), 30u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.suite << ": " << r.name << " -> " << r.actual;
}
