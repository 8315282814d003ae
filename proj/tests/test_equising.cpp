#include <gtest/gtest.h>

#include <random>

#include "zeq/cli/parse.hpp"
#include "zeq/equising/family.hpp"

using namespace zeq;

namespace {
MPoly P(const std::string& s) { return parse_poly(s, geometric_vars()); }
SurfaceGerm F(const std::string& s, std::vector<std::string> params = {"t"}) {
  return SurfaceGerm::make(parse_poly(s, geometric_vars(), params), params);
}
MultiplicitySequence S(unsigned a, unsigned b, unsigned c, unsigned d) { return {{a, b, c, d}}; }
}

TEST(Transverse, Examples) {
  auto raw = check_nu_transverse(P("z^2-x*y"));
  EXPECT_TRUE(raw.cond1);
  EXPECT_FALSE(raw.cond2);
  auto sheared = check_nu_transverse(P("z^2-(x+y)*y"));
  EXPECT_TRUE(sheared.cond1);
  EXPECT_TRUE(sheared.cond2);
  EXPECT_TRUE(sheared.cond3);
  auto smooth = check_nu_transverse(P("z"));
  EXPECT_TRUE(smooth.passes());
  EXPECT_FALSE(check_nu_transverse(P("x^2+y^2+z^3")).cond1);
}

TEST(NuStar, Examples) {
  EXPECT_EQ(multiplicity_sequence(P("z^2-x*y")).mu, S(2, 2, 1, 2));
  EXPECT_EQ(multiplicity_sequence(P("z^2-x^3")).mu, S(2, 3, 3, 0));
  EXPECT_EQ(multiplicity_sequence(P("z^2-x*y^2")).mu, S(2, 3, 2, 2));
  EXPECT_EQ(multiplicity_sequence(P("z")).mu, S(1, 0, 1, 0));
}

TEST(NuStar, DeepDiscriminantNeedsPrecision) {
  // D_f = 4 x^7 y^5: two distinct lines of total multiplicity 12, so i0 = 12 - 2 + 1 and
  // D^i0 is a constant times the discriminant of the two lines.
  EXPECT_EQ(multiplicity_sequence(P("z^2-x^7*y^5")).mu, S(2, 12, 11, 2));
  SearchOptions low;
  low.max_precision = 3;
  EXPECT_THROW(multiplicity_sequence(P("z^2-x^7*y^5"), low), PrecisionExhausted);
}

TEST(Family, Examples) {
  for (const char* src : {"z^2-(x+y)*y", "z^2-x*y-t*x^2"}) {
    SCOPED_TRACE(src);
    auto g = F(src);
    EXPECT_TRUE(family_zariski_equisingular(g).decision);
    EXPECT_TRUE(nu_transverse_ZE(g).decision);
    EXPECT_TRUE(nu_star_constant(g).constant);
  }
  // The singular point of z^2 - (x+y)y - tz sits at z = t/2: the fibers through the
  // origin are smooth for t != 0, so the family is not equimultiple along the t axis.
  auto moved = F("z^2-(x+y)*y-t*z");
  EXPECT_FALSE(family_zariski_equisingular(moved).decision);
  EXPECT_FALSE(nu_transverse_ZE(moved).decision);
  EXPECT_FALSE(nu_star_constant(moved).constant);
  auto h = consistency_harness(F("z^2-(x+y)*y-t*y^3"), {1, 2});
  EXPECT_TRUE(h.consistent);
}

TEST(Equimultiple, Examples) {
  std::vector<std::string> v{"x", "y", "t"};
  auto s = [&](const char* src) { return TruncSeries::exact(parse_poly(src, v)); };
  auto a = equimultiple_along_params(s("x^2+t*x"), {0, 1}, {2});
  EXPECT_EQ(a.generic_mult, Order::finite(1));
  EXPECT_EQ(a.special_mult, Order::finite(2));
  EXPECT_FALSE(a.equal);
  auto b = equimultiple_along_params(s("(1+t)*x^2"), {0, 1}, {2});
  EXPECT_EQ(b.generic_mult, Order::finite(2));
  EXPECT_TRUE(b.equal);
  auto c = equimultiple_along_params(s("x^3+t^2*x*y^2"), {0, 1}, {2});
  EXPECT_EQ(c.generic_mult, Order::finite(3));
  EXPECT_EQ(c.special_mult, Order::finite(3));
  EXPECT_TRUE(c.equal);
}

TEST(Equimultiple, GenericNeverExceedsSpecial) {
  std::mt19937_64 rng(5);
  std::vector<std::string> v{"x", "y", "t"};
  for (int it = 0; it < 200; ++it) {
    MPoly p(v);
    for (int k = 0; k < 4; ++k) {
      Monomial m;
      for (int i = 0; i < 3; ++i) m.exp[i] = rng() % 4;
      p += MPoly::monomial(v, m, Rat(static_cast<long>(rng() % 7) - 3));
    }
    if (set_zero(p, {2}).is_zero()) continue;
    auto r = equimultiple_along_params(TruncSeries::exact(p), {0, 1}, {2});
    ASSERT_TRUE(r.special_mult.is_finite());
    EXPECT_LE(r.generic_mult.value(), r.special_mult.value());
    EXPECT_EQ(r.equal, r.generic_mult == r.special_mult);
  }
}

TEST(Search, IdentityFirstAndDeterministic) {
  SearchOptions opt;
  auto t = search_nu_transverse(P("z^2-(x+y)*y"), opt);
  EXPECT_TRUE(t.change.is_identity());
  EXPECT_TRUE(t.report.passes());

  auto a = search_nu_transverse(P("z^2-x*y"), opt);
  auto b = search_nu_transverse(P("z^2-x*y"), opt);
  EXPECT_FALSE(a.change.is_identity());
  EXPECT_TRUE(a.report.passes());
  EXPECT_EQ(a.change.matrix, b.change.matrix);
  EXPECT_EQ(a.change.trial, b.change.trial);

  // xy is not regular in z until the coordinates are changed.
  auto c = search_nu_transverse(P("x*y"), opt);
  EXPECT_GT(c.change.trial, 0u);
  EXPECT_TRUE(c.report.cond1);
}

TEST(Search, TrialsExhausted) {
  SearchOptions opt;
  opt.max_trials = 1;
  try {
    search_nu_transverse(P("x^2+y^2+z^3"), opt);
    FAIL();
  } catch (const TrialsExhausted& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(NuStar, CoordinateInvariance) {
  for (const char* s : {"z^2-x*y", "z^2-x^3", "z^2-x*y^2", "z", "x^2+y^2+z^3", "z^2-x^2-y^3", "x*y*z"}) {
    auto r = coordinate_invariance_test(P(s), {1, 2, 7});
    EXPECT_TRUE(r.equal) << s;
  }
  EXPECT_EQ(coordinate_invariance_test(P("z^2-x^3"), {1, 7}).sequences[0], S(2, 3, 3, 0));
}

TEST(NuStar, ReductionAndSmoothConvention) {
  auto r = multiplicity_sequence(P("(z^2-x*y)^2"));
  EXPECT_TRUE(r.reduced);
  EXPECT_EQ(r.mu, S(2, 2, 1, 2));
  EXPECT_FALSE(multiplicity_sequence(P("z^2-x*y")).reduced);
  for (const char* s : {"z", "x+y^2+z^3", "y-x*z"}) {
    auto m = multiplicity_sequence(P(s));
    EXPECT_EQ(m.mu, S(1, 0, 1, 0)) << s;
    EXPECT_TRUE(m.smooth);
  }
}

TEST(NuStar, Semicontinuity) {
  std::vector<std::vector<Rat>> pts{{Rat(1, 2)}, {Rat(1, 3)}, {Rat(-1, 5)}};
  auto trivial = semicontinuity_sample(F("z^2-(x+y)*y"), pts);
  EXPECT_TRUE(trivial.holds);
  for (const auto& s : trivial.samples) EXPECT_EQ(s.order, std::strong_ordering::equal);

  auto drop = semicontinuity_sample(F("z^2-x*y-t*x"), pts);
  EXPECT_TRUE(drop.holds);
  for (const auto& s : drop.samples) {
    EXPECT_EQ(s.order, std::strong_ordering::less);
    EXPECT_EQ(s.at_point[0], 1u);
  }
}

TEST(Family, ShearParameterFamily) {
  // f(X + aZ, Y + bZ, Z) for the sheared A1, parameters (a, b), in the given coordinates.
  std::vector<std::string> params{"a", "b"};
  MPoly f = parse_poly("z^2-(x+y)*y", geometric_vars(), params);
  auto vars = f.vars();
  MPoly z = MPoly::variable(vars, "z");
  MPoly g = substitute(f, 0, MPoly::variable(vars, "x") + MPoly::variable(vars, "a") * z);
  g = substitute(g, 1, MPoly::variable(vars, "y") + MPoly::variable(vars, "b") * z);
  DecisionOptions opt;
  opt.fixed_coordinates = true;
  auto r = family_zariski_equisingular(SurfaceGerm::make(g, params), opt);
  EXPECT_FALSE(r.blocked);
  EXPECT_TRUE(r.decision) << r.reason;
}

TEST(Family, NonReducedPath) {
  // The square of an A1 family: the non-reduced path works on D^3 of a degree-4
  // Weierstrass polynomial and reaches the same decision as the reduced one.
  MPoly sq = parse_poly("(z^2-x*y-t*x^2)^2", geometric_vars(), {"t"});
  auto g = SurfaceGerm::make(sq, {"t"});
  DecisionOptions opt;
  opt.reduce = false;
  auto nr = family_zariski_equisingular(g, opt);
  EXPECT_EQ(nr.j0, 3u);  // degree 4 with 2 distinct roots
  auto red = family_zariski_equisingular(g);
  EXPECT_EQ(red.j0, 1u);
  EXPECT_EQ(nr.decision, red.decision);
  EXPECT_TRUE(red.decision);
}

TEST(Family, NotEquimultiple) {
  auto g = F("z^2-x*y-t*x");
  EXPECT_FALSE(family_zariski_equisingular(g).decision);
  auto h = consistency_harness(g, {1, 2, 3});
  EXPECT_TRUE(h.consistent);
  EXPECT_FALSE(h.decision);
}

TEST(Family, HarnessTrivialAndA1) {
  for (const char* s : {"z^2-(x+y)*y", "z^2-x*y-t*x^2"}) {
    auto h = consistency_harness(F(s), {1, 2, 3});
    EXPECT_TRUE(h.consistent) << s;
    EXPECT_TRUE(h.decision) << s;
  }
}

TEST(Family, BrianconSpeder) {
  auto g = F("z^5+t*y^6*z+x*y^7+x^15");
  auto r = family_zariski_equisingular(g);
  EXPECT_FALSE(r.decision);
  ASSERT_TRUE(r.disc_mult.has_value());
  EXPECT_EQ(r.disc_mult->special_mult, Order::finite(32));
  EXPECT_EQ(r.disc_mult->generic_mult, Order::finite(30));
}
