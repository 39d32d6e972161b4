#pragma once

// Slopes on a torus and closed arcs of the slope circle, with the GL(2,Z)
// change-of-basis action on both.
//
// A slope is stored as a primitive pair (p, q) with q >= 0, meaning the class
// p*h + q*h' in an ordered basis (h, h') of H_1(T); q == 0 is the vertical
// slope (the class of h). Finite slopes carry the affine coordinate
// tau = -p/q. The circle is oriented by increasing tau, with the vertical
// slope sitting between tau = +inf and tau = -inf.

#include "gmslope/arith.hpp"

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmslope {

class Slope {
 public:
  // Canonical primitive representative; throws std::invalid_argument on (0, 0).
  static Slope from_pair(const Integer& p, const Integer& q);
  static Slope vertical() { return Slope(1, 0); }
  static Slope from_tau(const Rational& tau);
  // "p/q" as produced by str(); "1/0" is vertical.
  static Slope parse(std::string_view text);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  bool is_vertical() const { return q_ == 0; }
  // Precondition: !is_vertical().
  Rational tau() const;

  std::string str() const;
  // Exact tau as a fraction string, or "inf" for the vertical slope.
  std::string tau_str() const;

  bool operator==(const Slope& other) const { return p_ == other.p_ && q_ == other.q_; }

 private:
  Slope(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {}
  Integer p_;
  Integer q_;
};

// Total order along the circle starting at the vertical slope:
// vertical first, then finite slopes by increasing tau.
std::strong_ordering circle_order(const Slope& a, const Slope& b);

// |p1*q2 - p2*q1|: geometric intersection number of the two slopes.
Integer delta(const Slope& a, const Slope& b);

// Integer 2x2 matrix acting on (p, q) column vectors.
struct GluingMatrix {
  Integer a{1}, b{0}, c{0}, d{1};

  static GluingMatrix identity() { return {}; }
  Integer det() const { return a * d - b * c; }
  bool is_unimodular() const;
  // Throws std::invalid_argument unless unimodular.
  GluingMatrix inverse() const;
  GluingMatrix operator*(const GluingMatrix& rhs) const;
  bool operator==(const GluingMatrix&) const = default;
};

// Throws std::invalid_argument for non-unimodular matrices.
Slope act(const GluingMatrix& g, const Slope& s);

class SlopeArc {
 public:
  enum class Kind { Empty, Full, Point, Arc };

  static SlopeArc empty() { return SlopeArc(Kind::Empty, Slope::vertical(), Slope::vertical()); }
  static SlopeArc full() { return SlopeArc(Kind::Full, Slope::vertical(), Slope::vertical()); }
  static SlopeArc point(const Slope& s) { return SlopeArc(Kind::Point, s, s); }
  // Closed arc from start to end in the positive direction. Throws if start == end.
  static SlopeArc arc(const Slope& start, const Slope& end);
  // [lo, hi] in tau; a point when lo == hi. Throws if lo > hi.
  static SlopeArc tau_interval(const Rational& lo, const Rational& hi);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_full() const { return kind_ == Kind::Full; }
  bool is_point() const { return kind_ == Kind::Point; }
  bool is_arc() const { return kind_ == Kind::Arc; }
  // Meaningful for Point and Arc.
  const Slope& start() const { return start_; }
  const Slope& end() const { return end_; }

  bool contains(const Slope& s) const;
  bool contains_vertical() const { return contains(Slope::vertical()); }
  // Topological interior in the circle (a point has empty interior).
  bool interior_contains(const Slope& s) const;
  // Boundary points: the two endpoints of a proper arc, the point itself,
  // nothing for Empty or Full.
  std::vector<Slope> frontier() const;

  std::string str() const;
  bool operator==(const SlopeArc& other) const;

 private:
  SlopeArc(Kind kind, Slope start, Slope end)
      : kind_(kind), start_(std::move(start)), end_(std::move(end)) {}
  Kind kind_;
  Slope start_;
  Slope end_;
};

// Finite union of pairwise disjoint closed arcs, in circle order of their
// starting points.
using SlopeSet = std::vector<SlopeArc>;

bool contains(const SlopeSet& set, const Slope& s);

SlopeArc act_arc(const GluingMatrix& g, const SlopeArc& arc);
SlopeSet arc_intersect(const SlopeArc& a, const SlopeArc& b);

// Rebuilds a closed subset of the circle from a membership predicate that is
// constant on each open gap between consecutive critical slopes.
template <typename Member>
SlopeSet components_from_cells(std::vector<Slope> critical, Member&& member);

// Slope in the arc with least q, then least |p|, then tau >= 0 preferred.
// Throws std::invalid_argument on an empty arc.
Slope simplest_slope(const SlopeArc& arc);

// Least-denominator rational in the closed interval [lo, hi] (lo <= hi),
// ties broken by least absolute value, then the non-negative one.
Rational simplest_rational(const Rational& lo, const Rational& hi);

// Representative rational strictly between two circle-consecutive slopes
// a -> b (a == b means the whole circle minus a).
Slope gap_representative(const Slope& a, const Slope& b);

template <typename Member>
SlopeSet components_from_cells(std::vector<Slope> critical, Member&& member) {
  critical.push_back(Slope::vertical());
  std::sort(critical.begin(), critical.end(),
            [](const Slope& x, const Slope& y) { return circle_order(x, y) < 0; });
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

  // Cells alternate point, gap, point, gap, ... around the circle.
  const std::size_t m = critical.size();
  std::vector<bool> in(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    in[2 * i] = member(critical[i]);
    in[2 * i + 1] = member(gap_representative(critical[i], critical[(i + 1) % m]));
  }
  bool all = true;
  for (bool b : in) all = all && b;
  if (all) return {SlopeArc::full()};

  std::size_t begin = 0;
  while (in[begin]) ++begin;
  SlopeSet out;
  const std::size_t cells = 2 * m;
  std::size_t i = 0;
  while (i < cells) {
    std::size_t idx = (begin + i) % cells;
    if (!in[idx]) {
      ++i;
      continue;
    }
    std::size_t first = idx;
    std::size_t last = idx;
    while (i < cells && in[(begin + i) % cells]) {
      last = (begin + i) % cells;
      ++i;
    }
    // A closed set's components begin and end on point cells.
    if (first % 2 != 0 || last % 2 != 0) {
      throw std::logic_error("membership predicate does not describe a closed set");
    }
    if (first == last) {
      out.push_back(SlopeArc::point(critical[first / 2]));
    } else {
      out.push_back(SlopeArc::arc(critical[first / 2], critical[last / 2]));
    }
  }
  std::sort(out.begin(), out.end(), [](const SlopeArc& x, const SlopeArc& y) {
    return circle_order(x.start(), y.start()) < 0;
  });
  return out;
}

}  // namespace gmslope
