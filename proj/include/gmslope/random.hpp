#pragma once

// Random instances for property tests and the oracle-check command.

#include "gmslope/graph.hpp"
#include "gmslope/seifert.hpp"

#include <random>

namespace gmslope {

using Rng = std::mt19937_64;

struct RandomInstance {
  SeifertPiece piece;
  ConstraintFamily family;
};

struct InstanceOptions {
  int max_cones = 4;
  int max_boundary = 4;
  long max_denominator = 12;
  long span = 3;  // endpoints in [-span, span]
};

// Orientable base, n + r >= 3, horizontal constraints (v = 0).
RandomInstance random_instance(Rng& rng, const InstanceOptions& opt = {});

struct TreeOptions {
  int max_pieces = 4;
  int max_cone_order = 5;
  int max_entry = 5;
  int max_extra_cones = 2;
  double nonorientable_rate = 0.1;
};

// det = -1 with entries in [-bound, bound].
GluingMatrix random_gluing(Rng& rng, int bound);
// det = +1 with entries in [-bound, bound].
GluingMatrix random_sl2(Rng& rng, int bound);

// Solid-torus role with b_1 = 1.
PlumbingGraph random_solid_torus(Rng& rng, const TreeOptions& opt = {});
// Closed role with b_1 = 0 and between min_pieces and max_pieces pieces.
PlumbingGraph random_closed(Rng& rng, int min_pieces, const TreeOptions& opt = {});

// Glues a product piece onto the dangling torus so that the new dangling
// frame is the old one moved by g (det g = +1).
PlumbingGraph reframe_dangling(const PlumbingGraph& g, const GluingMatrix& frame);

}  // namespace gmslope
