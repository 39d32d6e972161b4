#include "gmslope/slope.hpp"

#include <stdexcept>

namespace gmslope {

Slope Slope::from_pair(const Integer& p, const Integer& q) {
  if (p == 0 && q == 0) throw std::invalid_argument("slope from the zero class");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  Integer pp = p / g;
  Integer qq = q / g;
  if (qq < 0 || (qq == 0 && pp < 0)) {
    pp = -pp;
    qq = -qq;
  }
  return Slope(pp, qq);
}

Slope Slope::from_tau(const Rational& tau) {
  return Slope(Integer(-tau.get_num()), Integer(tau.get_den()));
}

Slope Slope::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("slope must be written p/q: '" + std::string(text) + "'");
  }
  Rational num = parse_rational(text.substr(0, slash));
  Rational den = parse_rational(text.substr(slash + 1));
  if (!is_integral(num) || !is_integral(den)) {
    throw std::invalid_argument("slope entries must be integers: '" + std::string(text) + "'");
  }
  return from_pair(num.get_num(), den.get_num());
}

Rational Slope::tau() const {
  if (is_vertical()) throw std::logic_error("tau of the vertical slope");
  return make_rational(-p_, q_);
}

std::string Slope::str() const { return p_.get_str() + "/" + q_.get_str(); }

std::string Slope::tau_str() const { return is_vertical() ? "inf" : to_string(tau()); }

std::strong_ordering circle_order(const Slope& a, const Slope& b) {
  if (a.is_vertical() || b.is_vertical()) {
    if (a.is_vertical() && b.is_vertical()) return std::strong_ordering::equal;
    return a.is_vertical() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  int c = cmp(a.tau(), b.tau());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer delta(const Slope& a, const Slope& b) { return abs_of(a.p() * b.q() - b.p() * a.q()); }

bool GluingMatrix::is_unimodular() const {
  Integer dt = det();
  return dt == 1 || dt == -1;
}

GluingMatrix GluingMatrix::inverse() const {
  if (!is_unimodular()) throw std::invalid_argument("matrix is not unimodular");
  Integer dt = det();
  return GluingMatrix{d * dt, -b * dt, -c * dt, a * dt};
}

GluingMatrix GluingMatrix::operator*(const GluingMatrix& r) const {
  return GluingMatrix{a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

Slope act(const GluingMatrix& g, const Slope& s) {
  if (!g.is_unimodular()) throw std::invalid_argument("matrix is not unimodular");
  return Slope::from_pair(g.a * s.p() + g.b * s.q(), g.c * s.p() + g.d * s.q());
}

SlopeArc SlopeArc::arc(const Slope& start, const Slope& end) {
  if (start == end) throw std::invalid_argument("arc endpoints coincide; use a point");
  return SlopeArc(Kind::Arc, start, end);
}

SlopeArc SlopeArc::tau_interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("tau interval with lo > hi");
  if (lo == hi) return point(Slope::from_tau(lo));
  return arc(Slope::from_tau(lo), Slope::from_tau(hi));
}

bool SlopeArc::contains(const Slope& s) const {
  switch (kind_) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::Point: return s == start_;
    case Kind::Arc: break;
  }
  if (circle_order(start_, end_) < 0) {
    return circle_order(start_, s) <= 0 && circle_order(s, end_) <= 0;
  }
  return circle_order(start_, s) <= 0 || circle_order(s, end_) <= 0;
}

bool SlopeArc::interior_contains(const Slope& s) const {
  switch (kind_) {
    case Kind::Empty:
    case Kind::Point: return false;
    case Kind::Full: return true;
    case Kind::Arc: return contains(s) && !(s == start_) && !(s == end_);
  }
  return false;
}

std::vector<Slope> SlopeArc::frontier() const {
  switch (kind_) {
    case Kind::Empty:
    case Kind::Full: return {};
    case Kind::Point: return {start_};
    case Kind::Arc: return {start_, end_};
  }
  return {};
}

std::string SlopeArc::str() const {
  switch (kind_) {
    case Kind::Empty: return "empty";
    case Kind::Full: return "full";
    case Kind::Point: return "{" + start_.tau_str() + "}";
    case Kind::Arc: return "[" + start_.tau_str() + " -> " + end_.tau_str() + "]";
  }
  return "";
}

bool SlopeArc::operator==(const SlopeArc& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Empty || kind_ == Kind::Full) return true;
  return start_ == o.start_ && end_ == o.end_;
}

bool contains(const SlopeSet& set, const Slope& s) {
  for (const auto& a : set) {
    if (a.contains(s)) return true;
  }
  return false;
}

SlopeArc act_arc(const GluingMatrix& g, const SlopeArc& arc) {
  if (!g.is_unimodular()) throw std::invalid_argument("matrix is not unimodular");
  switch (arc.kind()) {
    case SlopeArc::Kind::Empty:
    case SlopeArc::Kind::Full: return arc;
    case SlopeArc::Kind::Point: return SlopeArc::point(act(g, arc.start()));
    case SlopeArc::Kind::Arc: break;
  }
  // det = -1 reverses the circle orientation.
  if (g.det() == 1) return SlopeArc::arc(act(g, arc.start()), act(g, arc.end()));
  return SlopeArc::arc(act(g, arc.end()), act(g, arc.start()));
}

SlopeSet arc_intersect(const SlopeArc& a, const SlopeArc& b) {
  if (a.is_empty() || b.is_empty()) return {};
  if (a.is_full()) return {b};
  if (b.is_full()) return {a};
  std::vector<Slope> critical = a.frontier();
  for (const auto& s : b.frontier()) critical.push_back(s);
  return components_from_cells(std::move(critical),
                               [&](const Slope& s) { return a.contains(s) && b.contains(s); });
}

Slope gap_representative(const Slope& a, const Slope& b) {
  if (a == b) return a.is_vertical() ? Slope::from_tau(0) : Slope::from_tau(a.tau() + 1);
  if (a.is_vertical()) return Slope::from_tau(b.tau() - 1);
  if (b.is_vertical()) return Slope::from_tau(a.tau() + 1);
  if (a.tau() < b.tau()) return Slope::from_tau((a.tau() + b.tau()) / 2);
  return Slope::vertical();
}

namespace {

Rational simplest_positive(const Rational& lo, const Rational& hi) {
  Integer c = ceil_of(lo);
  if (Rational(c) <= hi) return Rational(c);
  Integer f = floor_of(lo);
  Rational inner = simplest_positive(1 / (hi - f), 1 / (lo - f));
  return Rational(f) + 1 / inner;
}

}  // namespace

Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (lo > 0) return simplest_positive(lo, hi);
  return -simplest_positive(-hi, -lo);
}

Slope simplest_slope(const SlopeArc& arc) {
  switch (arc.kind()) {
    case SlopeArc::Kind::Empty: throw std::invalid_argument("no slope in an empty arc");
    case SlopeArc::Kind::Full: return Slope::vertical();
    case SlopeArc::Kind::Point: return arc.start();
    case SlopeArc::Kind::Arc: break;
  }
  if (arc.contains_vertical()) return Slope::vertical();
  return Slope::from_tau(simplest_rational(arc.start().tau(), arc.end().tau()));
}

}  // namespace gmslope
