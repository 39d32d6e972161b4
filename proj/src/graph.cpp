#include "gmslope/graph.hpp"

#include "gmslope/snf.hpp"

#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace gmslope {

SeifertPiece GraphPiece::seifert() const {
  SeifertPiece s;
  s.base_orientable = orientable;
  s.crosscaps = crosscaps;
  s.boundary_count = boundary;
  for (const auto& c : cones) s.cones.push_back(frac_of(make_rational(c.beta, c.a)));
  return s;
}

std::vector<BoundaryRef> PlumbingGraph::dangling() const {
  std::set<BoundaryRef> used;
  for (const auto& e : edges) {
    used.insert(e.from);
    used.insert(e.to);
  }
  std::vector<BoundaryRef> out;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    for (std::size_t j = 0; j < pieces[p].boundary; ++j) {
      if (used.count({p, j}) == 0) out.push_back({p, j});
    }
  }
  return out;
}

std::optional<std::size_t> PlumbingGraph::edge_at(const BoundaryRef& ref) const {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].from == ref || edges[k].to == ref) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> PlumbingGraph::find_piece(const std::string& id) const {
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (pieces[p].id == id) return p;
  }
  return std::nullopt;
}

std::string PlumbingGraph::torus_id(const BoundaryRef& ref) const {
  if (auto e = edge_at(ref)) return "e" + std::to_string(*e);
  return pieces.at(ref.piece).id + "." + std::to_string(ref.index);
}

std::string to_string(Role role) { return role == Role::Closed ? "closed" : "solid-torus"; }

std::vector<std::string> validate(const PlumbingGraph& g) {
  std::vector<std::string> diag;
  if (g.pieces.empty()) {
    diag.push_back("graph has no pieces");
    return diag;
  }
  std::set<std::string> ids;
  for (const auto& p : g.pieces) {
    const std::string who = "piece '" + p.id + "': ";
    if (!ids.insert(p.id).second) diag.push_back(who + "duplicate id");
    if (p.boundary < 1) diag.push_back(who + "needs at least one boundary torus");
    if (p.orientable && p.crosscaps != 0) diag.push_back(who + "orientable base with crosscaps");
    if (!p.orientable && p.crosscaps < 1) diag.push_back(who + "non-orientable base needs a crosscap");
    for (const auto& c : p.cones) {
      if (c.a < 2) {
        diag.push_back(who + "cone order below 2");
        continue;
      }
      Integer gcd;
      mpz_gcd(gcd.get_mpz_t(), c.a.get_mpz_t(), c.beta.get_mpz_t());
      if (gcd != 1) diag.push_back(who + "cone invariants are not coprime");
    }
  }

  std::set<BoundaryRef> used;
  bool edges_ok = true;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    const std::string who = "edge " + std::to_string(k) + ": ";
    bool refs_ok = true;
    for (const BoundaryRef& r : {e.from, e.to}) {
      if (r.piece >= g.pieces.size()) {
        diag.push_back(who + "piece out of range");
        refs_ok = false;
      } else if (r.index >= g.pieces[r.piece].boundary) {
        diag.push_back(who + "boundary index out of range");
        refs_ok = false;
      } else if (!used.insert(r).second) {
        diag.push_back(who + "boundary torus glued twice");
      }
    }
    edges_ok = edges_ok && refs_ok;
    if (!e.matrix.is_unimodular()) {
      diag.push_back(who + "non-unimodular gluing");
    } else if (e.matrix.det() != -1) {
      diag.push_back(who + "orientation-incompatible gluing");
    }
  }

  if (edges_ok) {
    std::vector<std::size_t> parent(g.pieces.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool cycle = false;
    for (const auto& e : g.edges) {
      std::size_t a = find(e.from.piece);
      std::size_t b = find(e.to.piece);
      if (a == b) cycle = true;
      parent[a] = b;
    }
    std::set<std::size_t> comps;
    for (std::size_t p = 0; p < g.pieces.size(); ++p) comps.insert(find(p));
    if (cycle) diag.push_back("not a tree");
    if (comps.size() > 1) diag.push_back("graph is disconnected");
  }

  const std::size_t free_tori = g.dangling().size();
  if (g.role == Role::Closed && free_tori != 0) {
    diag.push_back("role mismatch: closed manifold has " + std::to_string(free_tori) + " dangling tori");
  }
  if (g.role == Role::SolidTorus && free_tori != 1) {
    diag.push_back("role mismatch: solid torus needs exactly one dangling torus, found " +
                   std::to_string(free_tori));
  }
  return diag;
}

void require_valid(const PlumbingGraph& g) {
  auto diag = validate(g);
  if (!diag.empty()) throw std::invalid_argument(diag.front());
}

Integer HomologySummary::torsion_order() const {
  Integer n = 1;
  for (const auto& t : torsion) n *= t;
  return n;
}

namespace {

struct Layout {
  std::vector<std::size_t> first;  // first generator of each piece
  std::size_t total = 0;

  static Layout of(const PlumbingGraph& g) {
    Layout l;
    for (const auto& p : g.pieces) {
      l.first.push_back(l.total);
      l.total += p.cones.size() + 1 + p.boundary + static_cast<std::size_t>(p.crosscaps);
    }
    return l;
  }
  std::size_t x(const PlumbingGraph&, std::size_t p, std::size_t i) const { return first[p] + i; }
  std::size_t h(const PlumbingGraph& g, std::size_t p) const { return first[p] + g.pieces[p].cones.size(); }
  std::size_t hs(const PlumbingGraph& g, std::size_t p, std::size_t j) const { return h(g, p) + 1 + j; }
  std::size_t y(const PlumbingGraph& g, std::size_t p, std::size_t k) const {
    return h(g, p) + 1 + g.pieces[p].boundary + k;
  }
};

struct Presentation {
  Layout layout;
  IntMatrix relations;
};

Presentation presentation(const PlumbingGraph& g) {
  Presentation pr{Layout::of(g), {}};
  const Layout& L = pr.layout;
  auto row = [&]() { return std::vector<Integer>(L.total, Integer(0)); };
  for (std::size_t p = 0; p < g.pieces.size(); ++p) {
    const GraphPiece& piece = g.pieces[p];
    for (std::size_t i = 0; i < piece.cones.size(); ++i) {
      auto r = row();
      r[L.x(g, p, i)] = piece.cones[i].a;
      r[L.h(g, p)] = piece.cones[i].beta;
      pr.relations.push_back(std::move(r));
    }
    auto base = row();
    for (std::size_t i = 0; i < piece.cones.size(); ++i) base[L.x(g, p, i)] = 1;
    base[L.h(g, p)] = piece.b;
    for (int k = 0; k < piece.crosscaps; ++k) base[L.y(g, p, static_cast<std::size_t>(k))] = 2;
    for (std::size_t j = 0; j < piece.boundary; ++j) base[L.hs(g, p, j)] = -1;
    pr.relations.push_back(std::move(base));
    if (!piece.orientable) {
      auto r = row();
      r[L.h(g, p)] = 2;
      pr.relations.push_back(std::move(r));
    }
  }
  for (const auto& e : g.edges) {
    const GluingMatrix& m = e.matrix;
    auto rh = row();
    rh[L.h(g, e.from.piece)] += 1;
    rh[L.h(g, e.to.piece)] -= m.a;
    rh[L.hs(g, e.to.piece, e.to.index)] -= m.c;
    auto rs = row();
    rs[L.hs(g, e.from.piece, e.from.index)] += 1;
    rs[L.h(g, e.to.piece)] -= m.b;
    rs[L.hs(g, e.to.piece, e.to.index)] -= m.d;
    pr.relations.push_back(std::move(rh));
    pr.relations.push_back(std::move(rs));
  }
  return pr;
}

std::vector<Integer> unit(std::size_t n, std::size_t i) {
  std::vector<Integer> v(n, Integer(0));
  v[i] = 1;
  return v;
}

}  // namespace

HomologySummary homology(const PlumbingGraph& g) {
  Presentation pr = presentation(g);
  const std::size_t n = pr.layout.total;
  SmithForm snf = smith_normal_form(pr.relations, n);
  HomologySummary out;
  out.betti = static_cast<long>(n - snf.rank());
  for (const auto& d : snf.diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  for (const auto& ref : g.dangling()) {
    BoundaryImage img;
    img.torus = ref;
    img.h = snf.coordinates(unit(n, pr.layout.h(g, ref.piece)));
    img.h_star = snf.coordinates(unit(n, pr.layout.hs(g, ref.piece, ref.index)));
    out.boundary.push_back(std::move(img));
  }
  return out;
}

LongitudeResult rational_longitude(const PlumbingGraph& g) {
  if (g.role != Role::SolidTorus) throw std::domain_error("rational longitude needs the solid-torus role");
  auto free_tori = g.dangling();
  if (free_tori.size() != 1) throw std::domain_error("rational longitude needs exactly one dangling torus");
  Presentation pr = presentation(g);
  const std::size_t n = pr.layout.total;
  SmithForm snf = smith_normal_form(pr.relations, n);
  if (n - snf.rank() != 1) throw std::domain_error("not a rational homology solid torus (b_1 != 1)");

  const BoundaryRef ref = free_tori.front();
  auto wh = snf.coordinates(unit(n, pr.layout.h(g, ref.piece)));
  auto ws = snf.coordinates(unit(n, pr.layout.hs(g, ref.piece, ref.index)));
  const std::size_t f = snf.rank();
  if (wh[f] == 0 && ws[f] == 0) throw std::logic_error("boundary torus maps into torsion");
  // p * wh[f] + q * ws[f] = 0
  Slope lambda = Slope::from_pair(ws[f], -wh[f]);

  Integer order = 1;
  for (std::size_t i = 0; i < snf.rank(); ++i) {
    const Integer& d = snf.diagonal[i];
    if (d == 1) continue;
    Integer w = lambda.p() * wh[i] + lambda.q() * ws[i];
    Integer gcd;
    mpz_gcd(gcd.get_mpz_t(), d.get_mpz_t(), w.get_mpz_t());
    order = lcm_of(order, Integer(d / gcd));
  }
  return {ref, lambda, order};
}

Normalized normalize_with_frames(const PlumbingGraph& g) {
  Normalized out{g, {}};
  for (const auto& p : g.pieces) out.frames.emplace_back(p.boundary, GluingMatrix::identity());
  for (std::size_t p = 0; p < out.graph.pieces.size(); ++p) {
    GraphPiece& piece = out.graph.pieces[p];
    for (auto& c : piece.cones) {
      Integer k = floor_div(c.beta, c.a);
      c.beta -= k * c.a;
      piece.b -= k;
    }
    if (piece.b == 0) continue;
    for (std::size_t j = 0; j < piece.boundary; ++j) {
      auto e = out.graph.edge_at({p, j});
      if (!e) continue;
      const GluingMatrix s{1, piece.b, 0, 1};
      Edge& edge = out.graph.edges[*e];
      if (edge.from == BoundaryRef{p, j}) {
        edge.matrix = edge.matrix * s.inverse();
      } else {
        edge.matrix = s * edge.matrix;
      }
      out.frames[p][j] = s;
      piece.b = 0;
      break;
    }
  }
  return out;
}

PlumbingGraph normalize(const PlumbingGraph& g) { return normalize_with_frames(g).graph; }

std::vector<ChildLink> children(const PlumbingGraph& g, const SubtreeRef& s) {
  std::vector<ChildLink> out;
  const GraphPiece& piece = g.pieces.at(s.piece);
  for (std::size_t j = 0; j < piece.boundary; ++j) {
    if (j == s.target) continue;
    auto e = g.edge_at({s.piece, j});
    if (!e) {
      throw std::invalid_argument("boundary " + std::to_string(j) + " of piece '" + piece.id +
                                  "' is not glued");
    }
    const Edge& edge = g.edges[*e];
    if (edge.from == BoundaryRef{s.piece, j}) {
      out.push_back({j, *e, {edge.to.piece, edge.to.index}, edge.matrix.inverse()});
    } else {
      out.push_back({j, *e, {edge.from.piece, edge.from.index}, edge.matrix});
    }
  }
  return out;
}

PlumbingGraph subtree_graph(const PlumbingGraph& g, const SubtreeRef& s) {
  const auto excluded = g.edge_at({s.piece, s.target});
  std::map<std::size_t, std::size_t> index;
  std::queue<std::size_t> todo;
  index[s.piece] = 0;
  todo.push(s.piece);
  std::vector<std::size_t> order{s.piece};
  while (!todo.empty()) {
    std::size_t p = todo.front();
    todo.pop();
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      if (excluded && k == *excluded) continue;
      const Edge& e = g.edges[k];
      std::size_t other;
      if (e.from.piece == p) {
        other = e.to.piece;
      } else if (e.to.piece == p) {
        other = e.from.piece;
      } else {
        continue;
      }
      if (index.count(other) != 0) continue;
      index[other] = order.size();
      order.push_back(other);
      todo.push(other);
    }
  }
  PlumbingGraph out;
  out.role = Role::SolidTorus;
  for (std::size_t p : order) out.pieces.push_back(g.pieces[p]);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (excluded && k == *excluded) continue;
    const Edge& e = g.edges[k];
    if (index.count(e.from.piece) == 0 || index.count(e.to.piece) == 0) continue;
    out.edges.push_back({{index[e.from.piece], e.from.index}, {index[e.to.piece], e.to.index}, e.matrix});
  }
  return out;
}

SubtreeRef root_of(const PlumbingGraph& g) {
  auto free_tori = g.dangling();
  if (free_tori.size() != 1) throw std::domain_error("solid-torus role needs exactly one dangling torus");
  return {free_tori.front().piece, free_tori.front().index};
}

}  // namespace gmslope
