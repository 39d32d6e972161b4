#include "gmslope/oracle.hpp"
#include "gmslope/random.hpp"
#include "gmslope/seifert.hpp"

#include <gtest/gtest.h>

using namespace gmslope;

namespace {

SeifertPiece p_base(std::vector<Rational> cones, std::size_t r) {
  SeifertPiece p;
  p.cones = std::move(cones);
  p.boundary_count = r;
  return p;
}

SeifertPiece q_base(std::vector<Rational> cones, std::size_t r) {
  SeifertPiece p = p_base(std::move(cones), r);
  p.base_orientable = false;
  p.crosscaps = 1;
  return p;
}

Rational q(long n, long d = 1) { return make_rational(n, d); }
SlopeArc pt(const Rational& t) { return SlopeArc::point(Slope::from_tau(t)); }

ConstraintFamily family(std::vector<SlopeArc> arcs, std::set<std::size_t> strong = {}) {
  ConstraintFamily c;
  c.arcs = std::move(arcs);
  c.strong = std::move(strong);
  return c;
}

}  // namespace

TEST(VCount, CountsArcsThroughFibre) {
  EXPECT_EQ(v_count(family({pt(q(1)), pt(q(-2, 3))})), 0u);
  EXPECT_EQ(v_count(family({SlopeArc::full()})), 1u);
  auto mixed = family({SlopeArc::full(), pt(q(0)), SlopeArc::point(Slope::vertical()),
                       SlopeArc::arc(Slope::from_tau(q(1)), Slope::from_tau(q(-1)))});
  std::size_t by_hand = 0;
  for (const auto& a : mixed.arcs) by_hand += a.contains_vertical() ? 1 : 0;
  EXPECT_EQ(v_count(mixed), by_hand);
  EXPECT_EQ(v_count(mixed), 3u);
}

TEST(TauStats, HandValues) {
  std::vector<Rational> one{q(1, 2)};
  TauStats s = tau_stats(one, {}, 2, 2);
  EXPECT_EQ(s.b0, 0);
  EXPECT_EQ(s.s0, 0);
  EXPECT_EQ(s.i0, 0);
  EXPECT_EQ(s.m0, -3);
  EXPECT_EQ(s.m1, -1);

  std::vector<Rational> zero{q(0)};
  TauStats z = tau_stats(zero, {}, 0, 2);
  EXPECT_EQ(z.b0, 0);
  EXPECT_EQ(z.s0, 1);
  EXPECT_EQ(z.m1, 0);

  TauStats e = tau_stats({}, {}, 2, 1);
  EXPECT_EQ(e.m0, -2);
  EXPECT_EQ(e.m1, -1);
}

TEST(CoreInterval, Examples) {
  EXPECT_EQ(core_interval(p_base({q(1, 2), q(1, 2)}, 1), family({})), std::make_pair(Integer(-2), Integer(-1)));
  EXPECT_EQ(core_interval(p_base({q(1, 3)}, 2), family({pt(q(1, 2))})), std::make_pair(Integer(-2), Integer(-1)));

  // Integral top endpoint on a strong constraint: i_1 = 1.
  SeifertPiece piece = p_base({q(1, 2)}, 2);
  auto c = family({SlopeArc::tau_interval(0, 1)}, {0});
  auto core = core_interval(piece, c);
  EXPECT_EQ(core.first, 1 - 1 - 2);
  EXPECT_EQ(core, grid_union(piece, c, 24));
}

TEST(CoreInterval, RejectsBadInput) {
  EXPECT_THROW(core_interval(p_base({q(1, 2)}, 2), family({SlopeArc::full()})), std::invalid_argument);
  EXPECT_THROW(core_interval(p_base({q(1, 2)}, 1), family({})), std::invalid_argument);
}

TEST(Refinement, AbsentForHalfHalf) {
  SeifertPiece piece = p_base({q(1, 2), q(1, 2)}, 1);
  const long long nmax = 200;
  EXPECT_FALSE(jn_refine_low(piece, family({}), nmax));
  EXPECT_FALSE(jn_refine_high(piece, family({}), nmax));
  EXPECT_FALSE(jn_extremal(piece, family({}), Side::Low, nmax));
  EXPECT_FALSE(jn_extremal(piece, family({}), Side::High, nmax));
}

// D^2(2,3) is the trefoil exterior: the detected arc runs from the meridian
// (tau -2) to the slope at distance 5 from the fibre (tau -4/5).
TEST(Refinement, TrefoilExterior) {
  SeifertPiece piece = p_base({q(1, 2), q(1, 3)}, 1);
  const long long nmax = 200;
  EXPECT_FALSE(jn_refine_low(piece, family({}), nmax));
  auto high = jn_refine_high(piece, family({}), nmax);
  ASSERT_TRUE(high);
  EXPECT_EQ(high->endpoint, q(-4, 5));
  EXPECT_EQ(high->certificate.n, 5);
  EXPECT_TRUE(validate_certificate(piece, family({}), *high));
  auto brute = jn_extremal(piece, family({}), Side::High, nmax);
  ASSERT_TRUE(brute);
  EXPECT_EQ(brute->endpoint, high->endpoint);
  EXPECT_TRUE(jn_exhaustive(piece, family({}), Side::High, q(-4, 5), nmax));
  EXPECT_EQ(detect_relative(piece, family({})).detected, SlopeArc::tau_interval(-2, q(-4, 5)));
}

TEST(Refinement, CertificatesRevalidateOnRandomPieces) {
  Rng rng(11);
  int present = 0;
  for (int i = 0; i < 300; ++i) {
    RandomInstance inst = random_instance(rng);
    auto [cmin, cmax] = core_interval(inst.piece, inst.family);
    const long long nmax = std::min<long long>(default_nmax(inst.piece, inst.family), 60);
    for (Side side : {Side::Low, Side::High}) {
      auto r = jn_refine(inst.piece, inst.family, side, nmax);
      auto brute = jn_extremal(inst.piece, inst.family, side, nmax);
      ASSERT_EQ(r.has_value(), brute.has_value());
      if (!r) continue;
      ++present;
      EXPECT_EQ(r->endpoint, brute->endpoint);
      EXPECT_TRUE(validate_certificate(inst.piece, inst.family, *r));
      if (side == Side::Low) {
        EXPECT_GT(r->endpoint, Rational(cmin - 1));
        EXPECT_LT(r->endpoint, Rational(cmin));
      } else {
        EXPECT_GT(r->endpoint, Rational(cmax));
        EXPECT_LT(r->endpoint, Rational(cmax + 1));
      }
      Refinement broken = *r;
      broken.endpoint += q(1, 1000);
      EXPECT_FALSE(validate_certificate(inst.piece, inst.family, broken));
    }
  }
  EXPECT_GT(present, 0);
}

TEST(DetectRelative, QBase) {
  DetectionResult d = detect_relative(q_base({}, 2), family({pt(q(1, 2))}));
  EXPECT_EQ(d.detected, SlopeArc::point(Slope::vertical()));
  EXPECT_NE(d.strong_status(Slope::vertical()), StrongStatus::Strong);

  DetectionResult full = detect_relative(q_base({}, 2), family({SlopeArc::full()}));
  EXPECT_TRUE(full.detected.is_full());
  EXPECT_NE(full.strong_status(Slope::vertical()), StrongStatus::Strong);
  EXPECT_EQ(full.strong_status(Slope::from_tau(q(3))), StrongStatus::Strong);
}

TEST(DetectRelative, N2) {
  SeifertPiece n2 = q_base({}, 1);
  ASSERT_TRUE(n2.is_n2());
  DetectionResult d = detect_relative(n2, family({}));
  EXPECT_EQ(d.detected, SlopeArc::point(Slope::vertical()));
  EXPECT_EQ(d.strong_status(Slope::vertical()), StrongStatus::Strong);
}

TEST(DetectRelative, HalfHalf) {
  DetectionResult d = detect_relative(p_base({q(1, 2), q(1, 2)}, 1), family({}));
  EXPECT_EQ(d.detected, SlopeArc::tau_interval(-2, -1));
  EXPECT_EQ(d.strong_status(Slope::from_tau(q(-2))), StrongStatus::NotStrong);
  EXPECT_EQ(d.strong_status(Slope::from_tau(q(-1))), StrongStatus::NotStrong);
  EXPECT_EQ(d.strong_status(Slope::from_tau(q(-3, 2))), StrongStatus::Strong);
}

TEST(DetectRelative, TwoVerticalConstraintsGiveEverything) {
  DetectionResult d = detect_relative(p_base({}, 3), family({SlopeArc::full(), SlopeArc::point(Slope::vertical())}));
  EXPECT_TRUE(d.detected.is_full());
  EXPECT_NE(d.strong_status(Slope::vertical()), StrongStatus::Strong);
  EXPECT_EQ(d.strong_status(Slope::from_tau(q(1, 2))), StrongStatus::Strong);
}

TEST(DetectRelative, SolidTorusAndProduct) {
  SeifertPiece disk = p_base({}, 1);
  EXPECT_EQ(detect_relative(disk, family({})).detected, SlopeArc::point(solid_torus_meridian(disk)));
  SeifertPiece cone = p_base({q(2, 5)}, 1);
  DetectionResult c = detect_relative(cone, family({}));
  EXPECT_EQ(c.detected, SlopeArc::point(solid_torus_meridian(cone)));
  EXPECT_EQ(delta(solid_torus_meridian(cone), Slope::vertical()), 5);

  SeifertPiece product = p_base({}, 2);
  ASSERT_TRUE(product.is_torus_x_interval());
  SlopeArc s = SlopeArc::tau_interval(q(1, 3), q(2));
  EXPECT_EQ(detect_relative(product, family({s})).detected, act_arc(product_identification(), s));
}

TEST(DetectRelative, IntervalPropertiesOnRandomPieces) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    RandomInstance inst = random_instance(rng);
    DetectionResult d = detect_relative(inst.piece, inst.family, 40);
    auto [cmin, cmax] = core_interval(inst.piece, inst.family);
    ASSERT_TRUE(d.detected.is_arc());
    const Rational lo = d.detected.start().tau();
    const Rational hi = d.detected.end().tau();
    EXPECT_LE(lo, Rational(cmin));
    EXPECT_GE(hi, Rational(cmax));
    EXPECT_GT(lo, Rational(cmin - 1));
    EXPECT_LT(hi, Rational(cmax + 1));
    EXPECT_NE(d.strong_status(d.detected.start()), StrongStatus::Strong);
    EXPECT_NE(d.strong_status(d.detected.end()), StrongStatus::Strong);
  }
}

TEST(DetectRelative, MonotoneInConstraints) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    RandomInstance inst = random_instance(rng);
    if (inst.family.arcs.empty()) continue;
    ConstraintFamily wider = inst.family;
    std::size_t j = static_cast<std::size_t>(i) % wider.arcs.size();
    const SlopeArc& a = wider.arcs[j];
    wider.arcs[j] = SlopeArc::tau_interval(a.start().tau() - q(1, 3), a.end().tau() + q(1, 2));
    SlopeArc small = detect_relative(inst.piece, inst.family, 30).detected;
    SlopeArc big = detect_relative(inst.piece, wider, 30).detected;
    for (const Slope& e : small.frontier()) EXPECT_TRUE(big.contains(e));
  }
}
