#include "gmslope/random.hpp"

#include <numeric>
#include <stdexcept>

namespace gmslope {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_rational(Rng& rng, long max_den, long span) {
  const long den = uniform(rng, 1, max_den);
  return make_rational(Integer(uniform(rng, -span * den, span * den)), Integer(den));
}

Rational random_gamma(Rng& rng, long max_order) {
  const long a = uniform(rng, 2, max_order);
  long b;
  do {
    b = uniform(rng, 1, a - 1);
  } while (std::gcd(a, b) != 1);
  return make_rational(Integer(b), Integer(a));
}

GluingMatrix random_det(Rng& rng, int bound, int det) {
  for (;;) {
    GluingMatrix m{uniform(rng, -bound, bound), uniform(rng, -bound, bound), uniform(rng, -bound, bound),
                   uniform(rng, -bound, bound)};
    if (m.det() == det) return m;
  }
}

GraphPiece random_piece(Rng& rng, const std::string& id, std::size_t boundary, const TreeOptions& opt) {
  GraphPiece p;
  p.id = id;
  p.boundary = boundary;
  p.orientable = std::bernoulli_distribution(opt.nonorientable_rate)(rng) ? false : true;
  p.crosscaps = p.orientable ? 0 : 1;
  long cones = uniform(rng, 0, opt.max_extra_cones);
  if (p.orientable) cones += std::max<long>(0, 3 - static_cast<long>(boundary));
  for (long i = 0; i < cones; ++i) {
    const long a = uniform(rng, 2, opt.max_cone_order);
    long b;
    do {
      b = uniform(rng, -a, 2 * a);
    } while (std::gcd(a, b) != 1);
    p.cones.push_back({a, b});
  }
  p.b = uniform(rng, -2, 2);
  return p;
}

// Random tree on m pieces; parent[k] < k.
PlumbingGraph random_tree(Rng& rng, int m, bool dangling_root, const TreeOptions& opt) {
  std::vector<int> parent(static_cast<std::size_t>(m), -1);
  std::vector<std::size_t> degree(static_cast<std::size_t>(m), 0);
  for (int k = 1; k < m; ++k) {
    parent[static_cast<std::size_t>(k)] = static_cast<int>(uniform(rng, 0, k - 1));
    ++degree[static_cast<std::size_t>(k)];
    ++degree[static_cast<std::size_t>(parent[static_cast<std::size_t>(k)])];
  }
  if (dangling_root) ++degree[0];
  PlumbingGraph g;
  g.role = dangling_root ? Role::SolidTorus : Role::Closed;
  for (int k = 0; k < m; ++k) {
    g.pieces.push_back(random_piece(rng, "M" + std::to_string(k + 1), degree[static_cast<std::size_t>(k)], opt));
  }
  std::vector<std::size_t> next(static_cast<std::size_t>(m), 0);
  if (dangling_root) next[0] = 1;
  for (int k = 1; k < m; ++k) {
    const std::size_t c = static_cast<std::size_t>(k);
    const std::size_t p = static_cast<std::size_t>(parent[c]);
    BoundaryRef up{p, next[p]++};
    BoundaryRef down{c, next[c]++};
    Edge e{up, down, random_gluing(rng, opt.max_entry)};
    if (std::bernoulli_distribution(0.5)(rng)) std::swap(e.from, e.to);
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace

RandomInstance random_instance(Rng& rng, const InstanceOptions& opt) {
  RandomInstance out;
  for (;;) {
    const long n = uniform(rng, 0, opt.max_cones);
    const long r = uniform(rng, 1, opt.max_boundary);
    if (n + r >= 3) {
      out.piece.boundary_count = static_cast<std::size_t>(r);
      for (long i = 0; i < n; ++i) out.piece.cones.push_back(random_gamma(rng, 7));
      break;
    }
  }
  for (std::size_t j = 0; j + 1 < out.piece.boundary_count; ++j) {
    Rational x = random_rational(rng, opt.max_denominator, opt.span);
    if (std::bernoulli_distribution(0.3)(rng)) {
      out.family.arcs.push_back(SlopeArc::point(Slope::from_tau(x)));
      continue;
    }
    Rational y;
    do {
      y = random_rational(rng, opt.max_denominator, opt.span);
    } while (y == x);
    if (y < x) std::swap(x, y);
    out.family.arcs.push_back(SlopeArc::tau_interval(x, y));
    if (std::bernoulli_distribution(0.5)(rng)) out.family.strong.insert(j);
  }
  return out;
}

GluingMatrix random_gluing(Rng& rng, int bound) { return random_det(rng, bound, -1); }
GluingMatrix random_sl2(Rng& rng, int bound) { return random_det(rng, bound, 1); }

PlumbingGraph random_solid_torus(Rng& rng, const TreeOptions& opt) {
  for (;;) {
    PlumbingGraph g = random_tree(rng, static_cast<int>(uniform(rng, 1, opt.max_pieces)), true, opt);
    if (homology(g).betti == 1) return g;
  }
}

PlumbingGraph random_closed(Rng& rng, int min_pieces, const TreeOptions& opt) {
  if (min_pieces < 2) throw std::invalid_argument("a closed graph needs at least two pieces");
  for (;;) {
    PlumbingGraph g = random_tree(rng, static_cast<int>(uniform(rng, min_pieces, std::max(min_pieces, opt.max_pieces))),
                                  false, opt);
    if (homology(g).betti == 0) return g;
  }
}

PlumbingGraph reframe_dangling(const PlumbingGraph& g, const GluingMatrix& frame) {
  if (frame.det() != 1) throw std::invalid_argument("re-framing through a product piece needs det = +1");
  const SubtreeRef root = root_of(g);
  PlumbingGraph out = g;
  GraphPiece collar;
  std::string id = "collar";
  while (out.find_piece(id)) id += "'";
  collar.id = id;
  collar.boundary = 2;
  out.pieces.push_back(collar);
  const std::size_t c = out.pieces.size() - 1;
  // The product identification is an involution.
  out.edges.push_back({{root.piece, root.target}, {c, 0}, product_identification() * frame});
  return out;
}

}  // namespace gmslope
