#include "gmslope/ctf.hpp"
#include "gmslope/graph.hpp"
#include "gmslope/graph_io.hpp"
#include "gmslope/random.hpp"
#include "gmslope/snf.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace gmslope;

namespace {

std::string data(const std::string& name) { return std::string(GMSLOPE_TEST_DATA) + "/" + name; }

GraphPiece disk(const std::string& id) {
  GraphPiece p;
  p.id = id;
  return p;
}

// Two solid tori glued along their boundaries.
PlumbingGraph two_disks(const GluingMatrix& m) {
  PlumbingGraph g;
  g.role = Role::Closed;
  g.pieces = {disk("U"), disk("V")};
  g.edges = {Edge{{0, 0}, {1, 0}, m}};
  return g;
}

bool mentions(const std::vector<std::string>& diag, const std::string& what) {
  return std::any_of(diag.begin(), diag.end(), [&](const std::string& d) { return d.find(what) != std::string::npos; });
}

}  // namespace

TEST(Smith, SmallMatrices) {
  SmithForm s = smith_normal_form({{Integer(2), Integer(4)}, {Integer(6), Integer(8)}}, 2);
  ASSERT_EQ(s.diagonal.size(), 2u);
  EXPECT_EQ(s.diagonal[0], 2);
  EXPECT_EQ(s.diagonal[1], 4);

  SmithForm z = smith_normal_form({{Integer(0), Integer(0), Integer(0)}}, 3);
  EXPECT_EQ(z.rank(), 0u);

  SmithForm r = smith_normal_form({{Integer(2), Integer(3)}}, 2);
  ASSERT_EQ(r.diagonal.size(), 1u);
  EXPECT_EQ(r.diagonal[0], 1);
}

TEST(Smith, DiagonalDividesAndTransformIsUnimodular) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> ent(-6, 6);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m(4, std::vector<Integer>(5));
    for (auto& row : m)
      for (auto& x : row) x = ent(rng);
    SmithForm s = smith_normal_form(m, 5);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      EXPECT_GT(s.diagonal[i], 0);
      EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
    }
    // Each relation, in diagonal coordinates, is a combination of d_i e_i.
    for (const auto& row : m) {
      auto c = s.coordinates(row);
      for (std::size_t i = 0; i < 5; ++i) {
        if (i < s.diagonal.size()) {
          EXPECT_EQ(c[i] % s.diagonal[i], 0);
        } else {
          EXPECT_EQ(c[i], 0);
        }
      }
    }
  }
}

TEST(Validate, WellFormedFixtures) {
  for (const char* f : {"n2.json", "half_half.json", "two_piece_overlap.json", "q_base_full.json"}) {
    EXPECT_TRUE(validate(load_manifold(data(f))).empty()) << f;
  }
}

TEST(Validate, Diagnostics) {
  PlumbingGraph g = load_manifold(data("two_piece_overlap.json"));
  PlumbingGraph plus = g;
  plus.edges[0].matrix = GluingMatrix{1, 0, 0, 1};
  EXPECT_TRUE(mentions(validate(plus), "orientation-incompatible gluing"));

  PlumbingGraph bad = g;
  bad.edges[0].matrix = GluingMatrix{2, 0, 0, 1};
  EXPECT_TRUE(mentions(validate(bad), "non-unimodular gluing"));

  PlumbingGraph cycle;
  cycle.role = Role::Closed;
  for (const char* id : {"A", "B"}) {
    GraphPiece p = disk(id);
    p.boundary = 2;
    p.cones = {Cone{2, 1}};
    cycle.pieces.push_back(p);
  }
  cycle.edges = {Edge{{0, 0}, {1, 0}, GluingMatrix{0, 1, 1, 0}}, Edge{{0, 1}, {1, 1}, GluingMatrix{0, 1, 1, 0}}};
  EXPECT_TRUE(mentions(validate(cycle), "not a tree"));

  PlumbingGraph role = load_manifold(data("half_half.json"));
  role.role = Role::Closed;
  EXPECT_TRUE(mentions(validate(role), "role mismatch"));

  PlumbingGraph cone = load_manifold(data("half_half.json"));
  cone.pieces[0].cones[0] = Cone{1, 0};
  EXPECT_TRUE(mentions(validate(cone), "cone order below 2"));

  PlumbingGraph empty;
  EXPECT_TRUE(mentions(validate(empty), "graph has no pieces"));
  EXPECT_THROW(require_valid(empty), std::invalid_argument);
}

TEST(Homology, LensSpacesAndSolidTori) {
  HomologySummary s3 = homology(two_disks(GluingMatrix{0, 1, 1, 0}));
  EXPECT_EQ(s3.betti, 0);
  EXPECT_TRUE(s3.torsion.empty());

  HomologySummary s2s1 = homology(two_disks(GluingMatrix{1, 0, 0, -1}));
  EXPECT_EQ(s2s1.betti, 1);

  HomologySummary lens = homology(two_disks(GluingMatrix{1, 3, 1, 2}));
  EXPECT_EQ(lens.betti, 0);
  ASSERT_EQ(lens.torsion.size(), 1u);
  EXPECT_EQ(lens.torsion[0], 3);
}

TEST(Homology, N2) {
  HomologySummary h = homology(load_manifold(data("n2.json")));
  EXPECT_EQ(h.betti, 1);
  ASSERT_EQ(h.torsion.size(), 1u);
  EXPECT_EQ(h.torsion[0], 2);
}

TEST(Homology, RolesOnRandomGraphs) {
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    EXPECT_EQ(homology(random_solid_torus(rng)).betti, 1);
    EXPECT_EQ(homology(random_closed(rng, 2)).betti, 0);
  }
}

TEST(Longitude, Fixtures) {
  EXPECT_EQ(rational_longitude(load_manifold(data("n2.json"))).slope, Slope::vertical());
  // Trefoil exterior: the Seifert longitude meets the fibre six times.
  LongitudeResult t = rational_longitude(load_manifold(data("trefoil_exterior.json")));
  EXPECT_EQ(delta(t.slope, Slope::vertical()), 6);
  EXPECT_EQ(t.order, 1);
  EXPECT_THROW(rational_longitude(load_manifold(data("two_piece_overlap.json"))), std::domain_error);
}

TEST(Longitude, OrderDividesTorsionAndSurvivesNormalize) {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    PlumbingGraph g = random_solid_torus(rng);
    LongitudeResult l = rational_longitude(g);
    HomologySummary h = homology(g);
    EXPECT_EQ(h.torsion_order() % l.order, 0);
    Normalized n = normalize_with_frames(g);
    LongitudeResult ln = rational_longitude(n.graph);
    EXPECT_EQ(ln.slope, act(n.frames[l.torus.piece][l.torus.index], l.slope));
    EXPECT_EQ(ln.order, l.order);
  }
}

TEST(Normalize, IdempotentAndHomologyPreserving) {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    PlumbingGraph g = i % 2 ? random_solid_torus(rng) : random_closed(rng, 2);
    PlumbingGraph n = normalize(g);
    EXPECT_EQ(normalize(n), n);
    HomologySummary a = homology(g), b = homology(n);
    EXPECT_EQ(a.betti, b.betti);
    EXPECT_EQ(a.torsion, b.torsion);
    for (const auto& p : n.pieces) {
      for (const auto& c : p.cones) {
        EXPECT_GT(c.beta, 0);
        EXPECT_LT(c.beta, c.a);
      }
    }
  }
}

TEST(Normalize, GaugeShift) {
  PlumbingGraph g = load_manifold(data("two_piece_overlap.json"));
  PlumbingGraph shifted = g;
  shifted.pieces[0].cones[0].beta += 2 * shifted.pieces[0].cones[0].a;
  shifted.pieces[0].b += 2;
  EXPECT_EQ(normalize(shifted), normalize(g));
}

TEST(Tree, ChildrenAndSubtrees) {
  PlumbingGraph g = load_manifold(data("q_base_full.json"));
  SubtreeRef root = root_of(g);
  EXPECT_EQ(g.pieces[root.piece].id, "Q");
  auto kids = children(g, root);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(g.pieces[kids[0].child.piece].id, "C");
  PlumbingGraph sub = subtree_graph(g, kids[0].child);
  EXPECT_EQ(sub.role, Role::SolidTorus);
  ASSERT_EQ(sub.pieces.size(), 1u);
  EXPECT_EQ(sub.pieces[0].id, "C");
}

TEST(GraphIo, RoundTrip) {
  Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    PlumbingGraph g = random_closed(rng, 2);
    EXPECT_EQ(parse_manifold(dump_manifold(g)), g);
  }
  PlumbingGraph n2 = load_manifold(data("n2.json"));
  EXPECT_EQ(parse_manifold(dump_manifold(n2)), n2);
}

TEST(GraphIo, Rejections) {
  const std::string good =
      R"({"role":"solid-torus","pieces":[{"id":"M","base":{"orientable":true,"crosscaps":0},"cones":[[2,1]],"b":0,"boundary":1}],"edges":[]})";
  EXPECT_NO_THROW(parse_manifold(good));
  EXPECT_THROW(parse_manifold("{"), ParseError);
  EXPECT_THROW(parse_manifold(R"({"pieces":[],"edges":[]})"), ParseError);
  std::string extra = good;
  extra.insert(1, R"("colour":"red",)");
  EXPECT_THROW(parse_manifold(extra), ParseError);
  std::string cone = good;
  cone.replace(cone.find("[[2,1]]"), 7, "[[2,1,3]]");
  EXPECT_THROW(parse_manifold(cone), ParseError);
  std::string role = good;
  role.replace(role.find("solid-torus"), 11, "open-book");
  EXPECT_THROW(parse_manifold(role), ParseError);
  EXPECT_THROW(load_manifold(data("no_such_file.json")), ParseError);
}

TEST(GraphIo, BigIntegersAsStrings) {
  const std::string text =
      R"({"role":"solid-torus","pieces":[{"id":"M","base":{"orientable":true,"crosscaps":0},"cones":[["100000000000000000000001","3"]],"b":"-7","boundary":1}],"edges":[]})";
  PlumbingGraph g = parse_manifold(text);
  EXPECT_EQ(g.pieces[0].cones[0].a, Integer("100000000000000000000001"));
  EXPECT_EQ(g.pieces[0].b, -7);
}
