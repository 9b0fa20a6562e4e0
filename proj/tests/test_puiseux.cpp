#include <gtest/gtest.h>

#include "support.hpp"

using namespace bilip;
using namespace testing_support;

namespace {

std::vector<PuiseuxArc> all_conjugates(const std::vector<PuiseuxArc>& reps) {
  std::vector<PuiseuxArc> out;
  for (const auto& r : reps)
    for (auto& c : conjugates(r, 256)) out.push_back(std::move(c));
  return out;
}

// Residual certificate: F(A(y), y) has no certified-nonzero term below the residual.
void expect_certified(const BivarPoly& F, const PuiseuxArc& a, const Precision& p) {
  const long N = a.ramification;
  const Rational R = a.residual.infinite ? Rational(40) : a.residual.value;
  const Rational scaled = R * N;
  Integer top_int;
  mpz_cdiv_q(top_int.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const long top = top_int.get_si();
  const Series s = substitute_naive(F, a, top);
  EXPECT_GE(order_of(s, top, p), top) << a.to_string();
}

}  // namespace

TEST(Puiseux, NewtonPolygonOfAShiftedPolar) {
  // z^2 + y^3 z + y^7: vertices (0,7), (1,3), (2,0)
  const NewtonPolygon np = newton_polygon(parse_poly("x^2 + y^3*x + y^7"));
  ASSERT_EQ(np.hull.size(), 3u);
  EXPECT_EQ(np.hull[0], (Monomial{0, 7}));
  EXPECT_EQ(np.hull[1], (Monomial{1, 3}));
  EXPECT_EQ(np.hull[2], (Monomial{2, 0}));
  ASSERT_EQ(np.edges.size(), 2u);
  EXPECT_EQ(np.edges[0].slope, 4);
  EXPECT_EQ(np.edges[1].slope, 3);
}

TEST(Puiseux, PolarOfTheTwoArcFamily) {
  const auto roots = all_conjugates(puiseux_roots(parse_poly("3*x^2 - 3*y^10"), 10));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_TRUE(identical(roots[0].coeff_at(5), Scalar(-1)));
  EXPECT_TRUE(identical(roots[1].coeff_at(5), Scalar(1)));
  for (const auto& r : roots) {
    EXPECT_EQ(r.terms.size(), 1u);
    EXPECT_TRUE(r.residual.infinite);
    EXPECT_EQ(r.ramification, 1);
  }
}

TEST(Puiseux, RamifiedCusp) {
  const auto reps = puiseux_roots(parse_poly("x^2 - y^3"), 5);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].ramification, 2);
  const auto c = conjugates(reps[0], 256);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(identical(c[0].coeff_at(Rational(3, 2)), Scalar(1)));
  EXPECT_TRUE(identical(c[1].coeff_at(Rational(3, 2)), Scalar(-1)));
  const Contact k = contact_order(c[0], c[1]);
  ASSERT_TRUE(k.value);
  EXPECT_EQ(*k.value, Rational(3, 2));
}

TEST(Puiseux, PolarOfTheBcFamily) {
  const BivarPoly fx = parse_poly(kBc).dx();
  const auto roots = all_conjugates(puiseux_roots(fx, 8));
  ASSERT_EQ(roots.size(), 2u);
  const PuiseuxArc* a = nullptr;
  const PuiseuxArc* b = nullptr;
  for (const auto& r : roots) (r.leading_exponent() == Order::of(3) ? a : b) = &r;
  ASSERT_TRUE(a && b);
  EXPECT_TRUE(identical(a->coeff_at(3), Scalar(Rational(-2, 3))));
  EXPECT_TRUE(identical(a->coeff_at(4), Scalar(Rational(1, 2))));
  EXPECT_TRUE(identical(a->coeff_at(5), Scalar(Rational(3, 8))));
  EXPECT_TRUE(identical(b->coeff_at(4), Scalar(Rational(-1, 2))));
  EXPECT_TRUE(identical(b->coeff_at(5), Scalar(Rational(-3, 8))));
  for (const auto& r : roots) EXPECT_TRUE(Order::of(8) < r.residual || r.residual == Order::of(8));
}

TEST(Puiseux, MultiplicitiesSumToTheXDegree) {
  for (const auto& s : admissible_templates(31, 25)) {
    const BivarPoly f = parse_poly(s);
    for (const BivarPoly& F : {f, f.dx()}) {
      int total = 0;
      for (const auto& r : all_conjugates(puiseux_roots(F, 12))) total += r.multiplicity;
      EXPECT_EQ(total, F.deg_x()) << F.to_string();
    }
  }
}

TEST(Puiseux, ResidualsAreCertifiedBySubstitution) {
  const Precision p;
  std::vector<std::string> germs = corpus();
  for (const auto& s : admissible_templates(32, 20)) germs.push_back(s);
  for (const auto& s : germs) {
    const BivarPoly fx = parse_poly(s).dx();
    for (const Rational target : {Rational(6), Rational(23, 2)})
      for (const auto& a : all_conjugates(puiseux_roots(fx, target))) {
        if (!a.residual.infinite) EXPECT_FALSE(a.residual < Order::of(target)) << s;
        expect_certified(fx, a, p);
      }
  }
}

TEST(Puiseux, ConjugatesShareTheirOrbit) {
  for (const auto& s : {"x^2 - y^3", "x^3 - y^7 + x*y^5", "x^3 + y^5", "x^4 - y^9"}) {
    for (const auto& rep : puiseux_roots(parse_poly(s), 6)) {
      const auto c = conjugates(rep, 256);
      ASSERT_EQ(static_cast<long>(c.size()), rep.ramification);
      for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j].conj_index, static_cast<long>(j));
      // Twisting by N-th roots of unity: integral exponents are shared, the
      // others sum to zero over the orbit.
      for (const auto& t : rep.terms) {
        Scalar sum = 0;
        for (const auto& cj : c) {
          sum += cj.coeff_at(t.exp);
          EXPECT_NEAR(static_cast<double>(cj.coeff_at(t.exp).abs_center()),
                      static_cast<double>(t.coeff.abs_center()), 1e-30);
        }
        if (t.exp.get_den() == 1) EXPECT_TRUE(approx_equal(sum, Scalar(rep.ramification) * t.coeff, Precision{}));
        else EXPECT_TRUE(is_zero(sum, Precision{})) << s;
      }
    }
  }
}

TEST(Puiseux, ContactIsBoundedByStarredContact) {
  const Precision p;
  std::vector<std::string> germs = corpus();
  for (const auto& s : admissible_templates(33, 15)) germs.push_back(s);
  for (const auto& s : germs) {
    const auto arcs = all_conjugates(puiseux_roots(parse_poly(s), 10));
    for (const auto& a : arcs)
      for (const auto& b : arcs) {
        if (&a == &b) continue;
        const Contact plain = contact_order(a, b, p);
        const Contact starred = contact_order_starred(a, b, p);
        EXPECT_FALSE(starred.as_order() < plain.as_order()) << s;
        const Contact back = contact_order(b, a, p);
        EXPECT_TRUE(back.as_order() == plain.as_order());
      }
  }
}

TEST(Puiseux, ComposeGermGolden) {
  const BivarPoly f = parse_poly(kBc);
  const auto roots = all_conjugates(puiseux_roots(f.dx(), 12));
  for (const auto& r : roots) {
    const GermExpansion e = compose_germ(f, r, 11);
    EXPECT_EQ(e.window, 11);
    if (r.leading_exponent() == Order::of(3)) {
      EXPECT_TRUE(identical(e.coeff_at(9), Scalar(Rational(31, 27))));
      EXPECT_TRUE(identical(e.coeff_at(10), Scalar(Rational(-2, 3))));
    } else {
      EXPECT_TRUE(identical(e.coeff_at(9), Scalar(1)));
      EXPECT_TRUE(identical(e.coeff_at(10), Scalar(0)));
    }
  }
}

TEST(Puiseux, WiderWindowsExtendNarrowerOnes) {
  std::vector<std::string> germs = corpus();
  for (const auto& s : admissible_templates(34, 10)) germs.push_back(s);
  for (const auto& s : germs) {
    const BivarPoly f = parse_poly(s);
    for (const auto& r : all_conjugates(puiseux_roots(f.dx(), 30))) {
      const Rational hi = std::min<Rational>(16, window_cap(f)), lo = hi / 2;
      const GermExpansion narrow = compose_germ(f, r, lo);
      const GermExpansion wide = compose_germ(f, r, hi);
      for (const auto& t : narrow.terms)
        EXPECT_TRUE(approx_equal(t.coeff, wide.coeff_at(t.exp), Precision{})) << s;
      for (const auto& t : wide.terms)
        if (t.exp < lo) EXPECT_TRUE(approx_equal(t.coeff, narrow.coeff_at(t.exp), Precision{})) << s;
    }
  }
}

TEST(Puiseux, ShortArcsNeedRefinement) {
  const BivarPoly f = parse_poly(kBc);
  const auto reps = puiseux_roots(f.dx(), 4);
  ASSERT_FALSE(reps.empty());
  const PuiseuxArc* shortest = &reps[0];
  for (const auto& r : reps)
    if (r.residual < shortest->residual) shortest = &r;
  ASSERT_FALSE(shortest->residual.infinite);
  try {
    compose_germ(f, *shortest, 30);
    FAIL() << "expected WindowTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
  }
}

TEST(Puiseux, TermCapIsEnforced) {
  try {
    puiseux_roots(parse_poly(kBc).dx(), 40, {Precision{}, 3});
    FAIL() << "expected TruncationCapExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationCapExceeded);
  }
}
