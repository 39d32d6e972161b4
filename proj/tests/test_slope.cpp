#include "gmslope/slope.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gmslope;

namespace {

Slope pr(long p, long q) { return Slope::from_pair(p, q); }
Slope tau(long num, long den = 1) { return Slope::from_tau(make_rational(num, den)); }

}  // namespace

TEST(Arith, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-6/4"), make_rational(-3, 2));
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(floor_of(make_rational(-1, 2)), -1);
  EXPECT_EQ(ceil_of(make_rational(-1, 2)), 0);
  EXPECT_EQ(frac_of(make_rational(-1, 3)), make_rational(2, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Slope, FromPairCanonicalizes) {
  EXPECT_EQ(pr(2, 4), pr(1, 2));
  EXPECT_EQ(pr(2, 4).p(), 1);
  EXPECT_EQ(pr(-3, 0), Slope::vertical());
  EXPECT_EQ(pr(5, -10).p(), -1);
  EXPECT_EQ(pr(5, -10).q(), 2);
  EXPECT_THROW(pr(0, 0), std::invalid_argument);
}

TEST(Slope, TauRoundTrip) {
  EXPECT_EQ(pr(-3, 2).tau(), make_rational(3, 2));
  EXPECT_EQ(Slope::vertical().tau_str(), "inf");
  EXPECT_EQ(tau(-2), pr(2, 1));
  for (long n = -7; n <= 7; ++n) {
    for (long d = 1; d <= 5; ++d) EXPECT_EQ(tau(n, d).tau(), make_rational(n, d));
  }
  EXPECT_EQ(Slope::parse("1/0"), Slope::vertical());
  EXPECT_EQ(Slope::parse(pr(-3, 7).str()), pr(-3, 7));
}

TEST(Slope, Act) {
  EXPECT_EQ(act(GluingMatrix::identity(), pr(1, 2)), pr(1, 2));
  EXPECT_EQ(act(GluingMatrix{0, -1, 1, 0}, Slope::vertical()), pr(0, 1));
  EXPECT_THROW(act(GluingMatrix{2, 0, 0, 1}, pr(1, 1)), std::invalid_argument);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> ent(-9, 9);
  int checked = 0;
  while (checked < 100) {
    GluingMatrix g{ent(rng), ent(rng), ent(rng), ent(rng)};
    if (!g.is_unimodular()) continue;
    long p = ent(rng), q = ent(rng);
    if (p == 0 && q == 0) continue;
    Slope s = act(g, pr(p, q));
    Integer gg;
    mpz_gcd(gg.get_mpz_t(), s.p().get_mpz_t(), s.q().get_mpz_t());
    EXPECT_EQ(gg, 1);
    EXPECT_EQ(act(g.inverse(), s), pr(p, q));
    ++checked;
  }
}

TEST(Slope, Delta) {
  EXPECT_EQ(delta(pr(2, 3), pr(2, 3)), 0);
  EXPECT_EQ(delta(pr(1, 0), pr(0, 1)), 1);
  EXPECT_EQ(delta(pr(2, 3), pr(1, 1)), 1);
}

TEST(Slope, CircleOrder) {
  EXPECT_TRUE(circle_order(Slope::vertical(), tau(-100)) < 0);
  EXPECT_TRUE(circle_order(tau(-1), tau(1, 2)) < 0);
  EXPECT_TRUE(circle_order(tau(3), tau(3)) == 0);
}

TEST(SlopeArc, Membership) {
  SlopeArc a = SlopeArc::tau_interval(-2, -1);
  EXPECT_TRUE(a.contains(tau(-3, 2)));
  EXPECT_TRUE(a.contains(tau(-2)));
  EXPECT_FALSE(a.interior_contains(tau(-2)));
  EXPECT_FALSE(a.contains(Slope::vertical()));
  SlopeArc wrap = SlopeArc::arc(tau(1), tau(-1));
  EXPECT_TRUE(wrap.contains_vertical());
  EXPECT_TRUE(wrap.contains(tau(5)));
  EXPECT_FALSE(wrap.contains(tau(0)));
  EXPECT_THROW(SlopeArc::arc(tau(1), tau(1)), std::invalid_argument);
  EXPECT_EQ(SlopeArc::tau_interval(1, 1), SlopeArc::point(tau(1)));
}

TEST(SlopeArc, ActArc) {
  SlopeArc a = SlopeArc::tau_interval(make_rational(-5, 2), make_rational(1, 3));
  EXPECT_EQ(act_arc(GluingMatrix::identity(), a), a);
  GluingMatrix g{2, 1, 1, 1};
  EXPECT_EQ(act_arc(g, SlopeArc::point(tau(3))), SlopeArc::point(act(g, tau(3))));
  for (const GluingMatrix& m : {GluingMatrix{2, 1, 1, 1}, GluingMatrix{1, 0, 0, -1}, GluingMatrix{0, 1, 1, 0},
                                GluingMatrix{-1, 3, 0, 1}}) {
    SlopeArc image = act_arc(m, a);
    for (long n = -40; n <= 40; ++n) {
      Slope x = tau(n, 8);
      EXPECT_EQ(a.contains(x), image.contains(act(m, x)));
    }
    EXPECT_EQ(a.contains_vertical(), image.contains(act(m, Slope::vertical())));
  }
}

TEST(SlopeArc, Intersect) {
  auto ff = arc_intersect(SlopeArc::full(), SlopeArc::full());
  ASSERT_EQ(ff.size(), 1u);
  EXPECT_TRUE(ff[0].is_full());

  auto touch = arc_intersect(SlopeArc::tau_interval(0, 1), SlopeArc::tau_interval(1, 2));
  ASSERT_EQ(touch.size(), 1u);
  EXPECT_EQ(touch[0], SlopeArc::point(tau(1)));

  SlopeArc wrap = SlopeArc::arc(tau(1), tau(-1));
  SlopeArc mid = SlopeArc::tau_interval(-2, 2);
  auto two = arc_intersect(wrap, mid);
  ASSERT_EQ(two.size(), 2u);
  for (long n = -60; n <= 60; ++n) {
    Slope x = tau(n, 12);
    EXPECT_EQ(contains(two, x), wrap.contains(x) && mid.contains(x));
  }
  EXPECT_FALSE(contains(two, Slope::vertical()));
  EXPECT_TRUE(arc_intersect(SlopeArc::tau_interval(0, 1), SlopeArc::tau_interval(2, 3)).empty());
}

TEST(SlopeArc, SimplestSlope) {
  EXPECT_EQ(simplest_slope(SlopeArc::tau_interval(-2, -1)), tau(-1));
  EXPECT_EQ(simplest_slope(SlopeArc::tau_interval(make_rational(1, 3), make_rational(2, 3))), tau(1, 2));
  EXPECT_EQ(simplest_slope(SlopeArc::full()), Slope::vertical());
  EXPECT_EQ(simplest_rational(Rational(-1), Rational(1)), 0);
}
