#pragma once

// Plumbing graphs of Seifert pieces and their integer homology.
//
// Presentation of H_1 for one piece with cone data (a_i, beta_i), section
// obstruction b, crosscap generators y_k and boundary sections h*_j:
//   a_i x_i + beta_i h = 0
//   sum_i x_i + b h + 2 sum_k y_k = sum_j h*_j
//   2 h = 0                         (non-orientable base only)
// A boundary slope (p, q) on torus j is the class p h + q h*_j.
// An edge with matrix M sends coordinates on its `from` side to its `to` side.

#include "gmslope/arith.hpp"
#include "gmslope/seifert.hpp"
#include "gmslope/slope.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gmslope {

struct Cone {
  Integer a;
  Integer beta;
  bool operator==(const Cone&) const = default;
};

struct GraphPiece {
  std::string id;
  bool orientable = true;
  int crosscaps = 0;
  std::vector<Cone> cones;
  Integer b{0};
  std::size_t boundary = 1;

  // Cone invariants reduced into (0, 1); does not touch b.
  SeifertPiece seifert() const;
  bool operator==(const GraphPiece&) const = default;
};

struct BoundaryRef {
  std::size_t piece = 0;
  std::size_t index = 0;
  auto operator<=>(const BoundaryRef&) const = default;
};

struct Edge {
  BoundaryRef from;
  BoundaryRef to;
  GluingMatrix matrix;
  bool operator==(const Edge&) const = default;
};

enum class Role { Closed, SolidTorus };

struct PlumbingGraph {
  Role role = Role::SolidTorus;
  std::vector<GraphPiece> pieces;
  std::vector<Edge> edges;

  std::vector<BoundaryRef> dangling() const;
  // Edge index attached to a boundary torus, if any.
  std::optional<std::size_t> edge_at(const BoundaryRef& ref) const;
  std::optional<std::size_t> find_piece(const std::string& id) const;
  std::string torus_id(const BoundaryRef& ref) const;
  bool operator==(const PlumbingGraph&) const = default;
};

std::string to_string(Role role);

// Empty when the graph is well formed.
std::vector<std::string> validate(const PlumbingGraph& g);
// Throws std::invalid_argument with the first diagnostic.
void require_valid(const PlumbingGraph& g);

struct BoundaryImage {
  BoundaryRef torus;
  std::vector<Integer> h;       // image of the fibre class
  std::vector<Integer> h_star;  // image of the section class
};

struct HomologySummary {
  long betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
  std::vector<BoundaryImage> boundary;  // one per dangling torus, in diagonal coordinates

  Integer torsion_order() const;
};

HomologySummary homology(const PlumbingGraph& g);

struct LongitudeResult {
  BoundaryRef torus;
  Slope slope = Slope::vertical();
  Integer order;  // order of the class in H_1
};

// Requires the solid-torus role and first Betti number 1; throws
// std::domain_error on a role mismatch.
LongitudeResult rational_longitude(const PlumbingGraph& g);

struct Normalized {
  PlumbingGraph graph;
  // frames[p][j] takes coordinates on boundary j of piece p in the input
  // frame to coordinates in the normalized frame.
  std::vector<std::vector<GluingMatrix>> frames;
};

// Reduces every cone invariant into (0, 1) and moves each piece's section
// obstruction onto its first glued boundary torus. Pieces with no edge keep
// their residual obstruction.
Normalized normalize_with_frames(const PlumbingGraph& g);
PlumbingGraph normalize(const PlumbingGraph& g);

// A piece together with the boundary torus facing away from the subtree.
struct SubtreeRef {
  std::size_t piece = 0;
  std::size_t target = 0;
};

struct ChildLink {
  std::size_t boundary;   // boundary of the parent piece
  std::size_t edge;
  SubtreeRef child;       // child piece and its boundary on the edge
  GluingMatrix to_parent; // child-side coordinates to parent-side coordinates
};

// Every boundary of the piece other than the target must carry an edge.
std::vector<ChildLink> children(const PlumbingGraph& g, const SubtreeRef& s);

// The solid torus cut off by the target torus of s, as its own graph.
// The returned pieces keep the ids of the original graph.
PlumbingGraph subtree_graph(const PlumbingGraph& g, const SubtreeRef& s);

// The piece that holds the unique dangling torus of a solid-torus graph.
SubtreeRef root_of(const PlumbingGraph& g);

}  // namespace gmslope
