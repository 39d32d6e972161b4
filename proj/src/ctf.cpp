#include "gmslope/ctf.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace gmslope {

namespace {

void transform(DetectionResult& r, const GluingMatrix& m) {
  r.detected = act_arc(m, r.detected);
  for (auto& e : r.exceptional) e.slope = act(m, e.slope);
}

std::pair<std::size_t, std::size_t> key(const SubtreeRef& s) { return {s.piece, s.target}; }

}  // namespace

TreeDetector::TreeDetector(PlumbingGraph normalized, std::optional<long long> nmax)
    : g_(std::move(normalized)), nmax_(nmax) {}

DetectionResult TreeDetector::local_family(const SubtreeRef& s, const ConstraintFamily& family) const {
  const GraphPiece& piece = g_.pieces.at(s.piece);
  DetectionResult r = detect_relative(piece.seifert(), family, nmax_);
  // A residual obstruction survives only on a piece with no glued torus.
  if (piece.b != 0) transform(r, GluingMatrix{1, -piece.b, 0, 1});
  return r;
}

DetectionResult TreeDetector::local(const SubtreeRef& s, const std::vector<Slope>& child_slopes) const {
  ConstraintFamily family;
  for (const auto& c : child_slopes) family.arcs.push_back(SlopeArc::point(c));
  return local_family(s, family);
}

std::vector<SlopeArc> TreeDetector::child_arcs(const SubtreeRef& s) {
  std::vector<SlopeArc> arcs;
  for (const auto& link : children(g_, s)) arcs.push_back(act_arc(link.to_parent, detect(link.child).detected));
  return arcs;
}

const DetectionResult& TreeDetector::detect(const SubtreeRef& s) {
  auto it = detected_.find(key(s));
  if (it != detected_.end()) return it->second;
  ConstraintFamily family;
  family.arcs = child_arcs(s);
  DetectionResult r = local_family(s, family);
  apply_tree_exceptions(s, r);
  return detected_.emplace(key(s), std::move(r)).first->second;
}

const LongitudeResult& TreeDetector::longitude(const SubtreeRef& s) {
  auto it = longitudes_.find(key(s));
  if (it != longitudes_.end()) return it->second;
  return longitudes_.emplace(key(s), rational_longitude(subtree_graph(g_, s))).first->second;
}

void TreeDetector::apply_tree_exceptions(const SubtreeRef& s, DetectionResult& r) {
  const GraphPiece& piece = g_.pieces.at(s.piece);
  if (!piece.orientable || piece.boundary != 2) return;
  const ChildLink link = children(g_, s).front();
  const DetectionResult& below = detect(link.child);

  // A product piece only re-frames the torus below it.
  if (piece.cones.empty()) {
    const GluingMatrix through = product_identification() * link.to_parent;
    for (const auto& ex : below.exceptional) r.set_status(act(through, ex.slope), ex.status, ex.reason);
    return;
  }

  // Cable space: a filling slope alpha with Delta(alpha, h) = 1 turns the
  // piece into a solid torus whose meridian must be strongly detected below.
  if (piece.cones.size() == 1) {
    const Cone& c = piece.cones.front();
    for (const auto& ex : below.exceptional) {
      if (!below.detected.contains(ex.slope)) continue;
      const Slope mu = act(link.to_parent, ex.slope);
      if (mu.q() != c.a) continue;
      const Integer num = c.beta - mu.p();
      if (mpz_divisible_p(num.get_mpz_t(), c.a.get_mpz_t()) == 0) continue;
      const Slope alpha = Slope::from_pair(Integer(num / c.a - piece.b), 1);
      if (r.strong_status(alpha) == StrongStatus::Strong) {
        r.set_status(alpha, StrongStatus::Indeterminate,
                     "cable-space filling whose meridian is not strongly detected below");
      }
    }
  }

  // Fibre with one boundary curve on the inner torus whose slope is the only
  // detected slope below and is not strongly detected.
  if (!below.detected.is_point()) return;
  const Slope mu_child = below.detected.start();
  if (below.strong_status(mu_child) == StrongStatus::Strong) return;
  const Slope mu = act(link.to_parent, mu_child);
  const Slope lambda = longitude(s).slope;
  if (mu.is_vertical() || lambda.is_vertical()) return;
  auto divides = [](const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; };
  bool fibred = divides(lambda.q(), mu.q());
  for (const auto& c : piece.cones) fibred = fibred && divides(c.a, mu.q());
  if (fibred && r.strong_status(lambda) == StrongStatus::Strong) {
    r.set_status(lambda, StrongStatus::Indeterminate,
                 "rational longitude bounding a fibre over a non-strong inner slope");
  }
}

DetectionResult detect_tree(const PlumbingGraph& g, std::optional<long long> nmax) {
  if (g.role != Role::SolidTorus) throw std::domain_error("detection needs the solid-torus role");
  require_valid(g);
  Normalized n = normalize_with_frames(g);
  TreeDetector td(n.graph, nmax);
  return td.detect(root_of(n.graph));
}

DegenerateReport check_degenerate(const PlumbingGraph& g, std::optional<long long> nmax) {
  if (g.role != Role::SolidTorus) throw std::domain_error("degeneracy check needs the solid-torus role");
  require_valid(g);
  TreeDetector td(normalize(g), nmax);
  const SubtreeRef root = root_of(td.graph());
  const DetectionResult& d = td.detect(root);
  const Slope lambda = td.longitude(root).slope;
  const GraphPiece& piece = td.graph().pieces[root.piece];
  const auto links = children(td.graph(), root);
  const auto arcs = td.child_arcs(root);
  const std::size_t v = static_cast<std::size_t>(
      std::count_if(arcs.begin(), arcs.end(), [](const SlopeArc& a) { return a.contains_vertical(); }));

  DegenerateReport rep;
  if (!piece.orientable) {
    rep.branch = "non-orientable base";
    rep.predicted = v == 0;
    rep.explanation = "point iff no child detects the fibre slope (v = " + std::to_string(v) + ")";
  } else if (!lambda.is_vertical()) {
    rep.branch = "orientable base, horizontal longitude";
    bool children_points = v == 0;
    std::vector<Slope> inner;
    for (const auto& link : links) {
      const DetectionResult& below = td.detect(link.child);
      const Slope lc = td.longitude(link.child).slope;
      children_points = children_points && below.detected == SlopeArc::point(lc);
      inner.push_back(act(link.to_parent, lc));
    }
    bool fills_to_point = false;
    if (children_points) {
      const DetectionResult at = td.local(root, inner);
      fills_to_point = at.detected == SlopeArc::point(lambda);
    }
    rep.predicted = children_points && fills_to_point;
    rep.explanation = std::string("v = ") + std::to_string(v) +
                      (children_points ? ", every child detects only its longitude" : ", some child detects more than its longitude") +
                      (fills_to_point ? ", the piece detects only the longitude" : "");
  } else {
    rep.branch = "orientable base, vertical longitude";
    std::size_t hits = 0;
    bool only_h = false;
    for (const auto& a : arcs) {
      if (!a.contains_vertical()) continue;
      ++hits;
      only_h = a == SlopeArc::point(Slope::vertical());
    }
    rep.predicted = hits == 1 && only_h;
    rep.explanation = "v = " + std::to_string(hits) +
                      (hits == 1 ? (only_h ? ", that child detects only the fibre" : ", that child detects more than the fibre") : "");
  }
  rep.degenerate = d.detected.is_point();
  rep.consistent = rep.degenerate == rep.predicted && (!rep.degenerate || d.detected.start() == lambda);
  return rep;
}

std::string to_string(PieceTag t) {
  switch (t) {
    case PieceTag::VerticalAnnulus: return "vertical-annulus";
    case PieceTag::Fibration: return "fibration";
    case PieceTag::HorizontalNonFibred: return "horizontal-non-fibred";
  }
  return "";
}

PieceTag classify_piece(const SeifertPiece& piece, const std::vector<Slope>& constraints, const Slope& target) {
  if (target.is_vertical()) return PieceTag::VerticalAnnulus;
  for (const auto& s : constraints) {
    if (s.is_vertical()) return PieceTag::VerticalAnnulus;
  }
  ConstraintFamily family;
  for (const auto& s : constraints) family.arcs.push_back(SlopeArc::point(s));
  return detect_relative(piece, family).detected.is_point() ? PieceTag::Fibration : PieceTag::HorizontalNonFibred;
}

namespace {

using Interval = std::pair<Rational, Rational>;

std::vector<Interval> horizontal_intervals(const SlopeArc& a, const Rational& w) {
  switch (a.kind()) {
    case SlopeArc::Kind::Empty: return {};
    case SlopeArc::Kind::Point:
      if (a.start().is_vertical()) return {};
      return {{a.start().tau(), a.start().tau()}};
    case SlopeArc::Kind::Full: return {{-w, w}};
    case SlopeArc::Kind::Arc: break;
  }
  if (!a.contains_vertical()) return {{a.start().tau(), a.end().tau()}};
  std::vector<Interval> out;
  if (!a.start().is_vertical()) out.push_back({a.start().tau(), std::max(a.start().tau(), w)});
  if (!a.end().is_vertical()) out.push_back({std::min(a.end().tau(), Rational(-w)), a.end().tau()});
  return out;
}

std::optional<Slope> simplest_horizontal(const SlopeArc& a) {
  switch (a.kind()) {
    case SlopeArc::Kind::Empty: return std::nullopt;
    case SlopeArc::Kind::Point:
      if (a.start().is_vertical()) return std::nullopt;
      return a.start();
    case SlopeArc::Kind::Full: return Slope::from_tau(0);
    case SlopeArc::Kind::Arc: break;
  }
  if (!a.contains_vertical()) return simplest_slope(a);
  std::optional<Rational> best;
  auto consider = [&](const Rational& x) {
    if (!best || abs(x) < abs(*best)) best = x;
  };
  if (!a.start().is_vertical()) {
    const Rational s = a.start().tau();
    consider(s <= 0 ? Rational(0) : Rational(ceil_of(s)));
  }
  if (!a.end().is_vertical()) {
    const Rational e = a.end().tau();
    consider(e >= 0 ? Rational(0) : Rational(floor_of(e)));
  }
  return Slope::from_tau(*best);
}

struct Candidate {
  Rational value;
  Integer floor;
  bool integral;
};

std::vector<Candidate> candidates(const std::vector<Interval>& parts) {
  std::vector<Candidate> out;
  std::set<std::pair<Integer, bool>> seen;
  auto add = [&](const Rational& x) {
    Candidate c{x, floor_of(x), is_integral(x)};
    if (seen.insert({c.floor, c.integral}).second) out.push_back(c);
  };
  for (const auto& [l, u] : parts) {
    std::vector<Rational> pts{l, u};
    for (Integer k = ceil_of(l); Rational(k) <= u; ++k) pts.push_back(Rational(k));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      add(pts[i]);
      if (i + 1 < pts.size()) add((pts[i] + pts[i + 1]) / 2);
    }
  }
  return out;
}

// Point tuples on the child tori whose core interval contains t.
std::optional<std::vector<Slope>> core_tuple(const GraphPiece& piece, const std::vector<SlopeArc>& arcs,
                                             const Rational& t) {
  Rational w = abs(Rational(floor_of(t)));
  for (const auto& a : arcs) {
    for (const auto& s : a.frontier()) {
      if (!s.is_vertical()) w += abs(s.tau());
    }
  }
  w += Rational(static_cast<long>(piece.cones.size() + piece.boundary + 3));
  w = Rational(ceil_of(w));

  std::vector<std::vector<Candidate>> cands;
  for (const auto& a : arcs) {
    cands.push_back(candidates(horizontal_intervals(a, w)));
    if (cands.back().empty()) return std::nullopt;
  }
  std::map<std::pair<Integer, long>, std::vector<std::size_t>> states{{{Integer(0), 0L}, {}}};
  for (const auto& cj : cands) {
    std::map<std::pair<Integer, long>, std::vector<std::size_t>> next;
    for (const auto& [st, choice] : states) {
      for (std::size_t i = 0; i < cj.size(); ++i) {
        std::pair<Integer, long> nk{st.first + cj[i].floor, st.second + (cj[i].integral ? 1 : 0)};
        if (next.count(nk) != 0) continue;
        auto c = choice;
        c.push_back(i);
        next.emplace(std::move(nk), std::move(c));
      }
    }
    states = std::move(next);
  }
  const long nr1 = static_cast<long>(piece.cones.size() + piece.boundary) - 1;
  for (const auto& [st, choice] : states) {
    Rational m0(Integer(-st.first - nr1));
    Rational m1(Integer(-st.first + st.second - 1));
    if (m0 <= t && t <= m1) {
      std::vector<Slope> out;
      for (std::size_t j = 0; j < choice.size(); ++j) out.push_back(Slope::from_tau(cands[j][choice[j]].value));
      return out;
    }
  }
  return std::nullopt;
}

// Upper (or lower) ends of the horizontal parts of each child arc.
std::optional<std::vector<Slope>> extreme_tuple(const std::vector<SlopeArc>& arcs, bool upper) {
  std::vector<Slope> out;
  for (const auto& a : arcs) {
    if (a.is_empty() || a.is_full()) return std::nullopt;
    const Slope& s = upper ? a.end() : a.start();
    if (s.is_vertical()) return std::nullopt;
    out.push_back(s);
  }
  return out;
}

class WitnessBuilder {
 public:
  WitnessBuilder(TreeDetector& td) : td_(td) {}

  void assign(const SubtreeRef& ref, const Slope& target) {
    local_.insert_or_assign(BoundaryRef{ref.piece, ref.target}, target);
    visited_.push_back(ref);
    const auto links = children(td_.graph(), ref);
    const auto arcs = td_.child_arcs(ref);
    const std::vector<Slope> tuple = find_tuple(ref, arcs, target);
    for (std::size_t i = 0; i < links.size(); ++i) {
      local_.insert_or_assign(BoundaryRef{ref.piece, links[i].boundary}, tuple[i]);
      assign(links[i].child, act(links[i].to_parent.inverse(), tuple[i]));
    }
  }

  const std::map<BoundaryRef, Slope>& local() const { return local_; }
  const std::vector<SubtreeRef>& visited() const { return visited_; }

 private:
  std::vector<Slope> find_tuple(const SubtreeRef& ref, const std::vector<SlopeArc>& arcs, const Slope& target) {
    const GraphPiece& piece = td_.graph().pieces[ref.piece];
    auto works = [&](const std::vector<Slope>& tuple) { return td_.local(ref, tuple).detected.contains(target); };
    if (arcs.empty()) {
      if (works({})) return {};
      throw std::logic_error("slope " + target.str() + " is not detected by piece '" + piece.id + "'");
    }

    std::vector<std::vector<Slope>> tries;
    const SeifertPiece sp = piece.seifert();
    if (sp.is_torus_x_interval()) tries.push_back({act(product_identification().inverse(), target)});
    if (piece.orientable && !target.is_vertical()) {
      if (auto t = core_tuple(piece, arcs, target.tau())) tries.push_back(*t);
      if (auto t = extreme_tuple(arcs, true)) tries.push_back(*t);
      if (auto t = extreme_tuple(arcs, false)) tries.push_back(*t);
    }
    auto with_vertical = [&](const std::set<std::size_t>& vs) -> std::optional<std::vector<Slope>> {
      std::vector<Slope> out;
      for (std::size_t j = 0; j < arcs.size(); ++j) {
        if (vs.count(j) != 0) {
          if (!arcs[j].contains_vertical()) return std::nullopt;
          out.push_back(Slope::vertical());
        } else {
          auto s = simplest_horizontal(arcs[j]);
          if (!s) return std::nullopt;
          out.push_back(*s);
        }
      }
      return out;
    };
    std::vector<std::size_t> vertical_ok;
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      if (arcs[j].contains_vertical()) vertical_ok.push_back(j);
    }
    if (auto t = with_vertical({})) tries.push_back(*t);
    for (std::size_t j : vertical_ok) {
      if (auto t = with_vertical({j})) tries.push_back(*t);
    }
    for (std::size_t x = 0; x < vertical_ok.size(); ++x) {
      for (std::size_t y = x + 1; y < vertical_ok.size(); ++y) {
        if (auto t = with_vertical({vertical_ok[x], vertical_ok[y]})) tries.push_back(*t);
      }
    }
    for (const auto& t : tries) {
      if (works(t)) return t;
    }
    throw std::logic_error("no coherent extension of slope " + target.str() + " through piece '" + piece.id + "'");
  }

  TreeDetector& td_;
  std::map<BoundaryRef, Slope> local_;
  std::vector<SubtreeRef> visited_;
};

SlopeAssignment to_input_frames(const PlumbingGraph& g, const Normalized& n,
                                const std::map<BoundaryRef, Slope>& local) {
  SlopeAssignment out;
  for (std::size_t k = 0; k < n.graph.edges.size(); ++k) {
    const BoundaryRef& from = n.graph.edges[k].from;
    auto it = local.find(from);
    if (it == local.end()) continue;
    out.slopes.insert_or_assign("e" + std::to_string(k), act(n.frames[from.piece][from.index].inverse(), it->second));
  }
  for (const auto& ref : n.graph.dangling()) {
    auto it = local.find(ref);
    if (it == local.end()) continue;
    out.slopes.insert_or_assign(g.torus_id(ref), act(n.frames[ref.piece][ref.index].inverse(), it->second));
  }
  return out;
}

std::vector<SubtreeRef> roots_for(const PlumbingGraph& g, std::optional<std::size_t> split_edge) {
  if (g.role == Role::SolidTorus) return {root_of(g)};
  const std::size_t k = split_edge.value_or(0);
  if (k >= g.edges.size()) throw std::invalid_argument("split edge out of range");
  const Edge& e = g.edges[k];
  return {{e.from.piece, e.from.index}, {e.to.piece, e.to.index}};
}

}  // namespace

SlopeAssignment extract_witness(const PlumbingGraph& g, const Slope& target, std::optional<long long> nmax) {
  if (g.role != Role::SolidTorus) throw std::domain_error("witness extraction needs the solid-torus role");
  require_valid(g);
  Normalized n = normalize_with_frames(g);
  TreeDetector td(n.graph, nmax);
  const SubtreeRef root = root_of(n.graph);
  if (!td.detect(root).detected.contains(target)) {
    throw std::invalid_argument("slope " + target.str() + " is not detected");
  }
  WitnessBuilder wb(td);
  wb.assign(root, target);
  return to_input_frames(g, n, wb.local());
}

std::vector<std::string> verify_assignment(const PlumbingGraph& g, const SlopeAssignment& a,
                                           std::optional<std::size_t> split_edge,
                                           std::optional<long long> nmax) {
  require_valid(g);
  Normalized n = normalize_with_frames(g);
  const PlumbingGraph& G = n.graph;
  std::vector<std::string> failures;
  std::map<BoundaryRef, Slope> local;
  for (std::size_t k = 0; k < G.edges.size(); ++k) {
    auto it = a.slopes.find("e" + std::to_string(k));
    if (it == a.slopes.end()) {
      failures.push_back("edge e" + std::to_string(k) + " has no slope");
      continue;
    }
    const Edge& e = G.edges[k];
    const Slope from = act(n.frames[e.from.piece][e.from.index], it->second);
    local.insert_or_assign(e.from, from);
    local.insert_or_assign(e.to, act(e.matrix, from));
  }
  for (const auto& ref : G.dangling()) {
    auto it = a.slopes.find(G.torus_id(ref));
    if (it == a.slopes.end()) {
      failures.push_back("torus " + G.torus_id(ref) + " has no slope");
      continue;
    }
    local.insert_or_assign(ref, act(n.frames[ref.piece][ref.index], it->second));
  }
  if (!failures.empty()) return failures;

  TreeDetector td(G, nmax);
  std::deque<SubtreeRef> todo;
  for (const auto& r : roots_for(G, split_edge)) todo.push_back(r);
  while (!todo.empty()) {
    const SubtreeRef ref = todo.front();
    todo.pop_front();
    std::vector<Slope> inner;
    for (const auto& link : children(G, ref)) {
      inner.push_back(local.at({ref.piece, link.boundary}));
      todo.push_back(link.child);
    }
    const Slope target = local.at({ref.piece, ref.target});
    if (!td.local(ref, inner).detected.contains(target)) {
      failures.push_back("piece '" + G.pieces[ref.piece].id + "' does not detect its tuple");
    }
  }
  return failures;
}

CtfVerdict decide_ctf(const PlumbingGraph& g, std::size_t split_edge, std::optional<long long> nmax) {
  if (g.role != Role::Closed) throw std::domain_error("taut-foliation decision needs the closed role");
  require_valid(g);
  if (g.edges.empty()) {
    throw std::invalid_argument(
        "Seifert fibered input without JSJ edges is not handled; fill a one-piece solid torus and use detect");
  }
  if (homology(g).betti != 0) throw std::domain_error("not a rational homology sphere (b_1 > 0)");
  if (split_edge >= g.edges.size()) throw std::invalid_argument("split edge out of range");

  Normalized n = normalize_with_frames(g);
  TreeDetector td(n.graph, nmax);
  const Edge& e = n.graph.edges[split_edge];
  const SubtreeRef u{e.from.piece, e.from.index};
  const SubtreeRef v{e.to.piece, e.to.index};

  CtfVerdict out;
  out.split_edge = split_edge;
  out.side_from = td.detect(u).detected;
  out.side_to = act_arc(e.matrix.inverse(), td.detect(v).detected);
  const SlopeSet meet = arc_intersect(out.side_from, out.side_to);
  if (meet.empty()) {
    out.admits = false;
    out.note = "no gluing-coherent family exists; no taut-foliation certificate";
    return out;
  }

  auto rank = [](const Slope& s) {
    return std::make_tuple(s.q(), abs_of(s.p()), s.is_vertical() || s.tau() >= 0 ? 0 : 1);
  };
  Slope alpha = simplest_slope(meet.front());
  for (const auto& arc : meet) {
    Slope s = simplest_slope(arc);
    if (rank(s) < rank(alpha)) alpha = s;
  }

  WitnessBuilder wb(td);
  wb.assign(u, alpha);
  wb.assign(v, act(e.matrix, alpha));
  SlopeAssignment witness = to_input_frames(g, n, wb.local());
  auto failures = verify_assignment(g, witness, split_edge, nmax);
  if (!failures.empty()) throw std::logic_error("witness failed re-validation: " + failures.front());

  for (const auto& ref : wb.visited()) {
    std::vector<Slope> inner;
    for (const auto& link : children(n.graph, ref)) inner.push_back(wb.local().at({ref.piece, link.boundary}));
    out.piece_tags[n.graph.pieces[ref.piece].id] =
        classify_piece(n.graph.pieces[ref.piece].seifert(), inner, wb.local().at({ref.piece, ref.target}));
  }
  out.admits = true;
  out.witness = std::move(witness);
  out.note = "admits a co-oriented taut foliation (gluing-coherent slopes exist), hence not an L-space";
  return out;
}

}  // namespace gmslope
