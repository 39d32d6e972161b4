#include "gmslope/seifert.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gmslope {

bool SeifertPiece::is_n2() const {
  return !base_orientable && crosscaps == 1 && cones.empty() && boundary_count == 1;
}

bool SeifertPiece::is_solid_torus() const {
  return base_orientable && boundary_count == 1 && cones.size() <= 1;
}

bool SeifertPiece::is_torus_x_interval() const {
  return base_orientable && boundary_count == 2 && cones.empty();
}

bool SeifertPiece::is_cable_space() const {
  return base_orientable && boundary_count == 2 && cones.size() == 1;
}

void SeifertPiece::check() const {
  if (boundary_count < 1) throw std::invalid_argument("a piece needs at least one boundary torus");
  if (base_orientable && crosscaps != 0) {
    throw std::invalid_argument("orientable base with crosscaps");
  }
  if (!base_orientable && crosscaps < 1) {
    throw std::invalid_argument("non-orientable base needs at least one crosscap");
  }
  for (const auto& g : cones) {
    if (g <= 0 || g >= 1) throw std::invalid_argument("cone invariant outside (0, 1): " + to_string(g));
    if (g.get_den() < 2) throw std::invalid_argument("cone order below 2");
  }
}

void ConstraintFamily::check(const SeifertPiece& piece) const {
  if (arcs.size() + 1 != piece.boundary_count) {
    throw std::invalid_argument("constraint count must be one less than the boundary count");
  }
  for (const auto& a : arcs) {
    if (a.is_empty()) throw std::invalid_argument("empty constraint arc");
  }
  for (std::size_t j : strong) {
    if (j >= arcs.size()) throw std::invalid_argument("strong index out of range");
    if (arcs[j].contains_vertical()) throw std::invalid_argument("strong constraint contains the fibre slope");
    if (arcs[j].is_point()) throw std::invalid_argument("strong constraint is a single slope");
  }
}

std::string to_string(StrongStatus s) {
  switch (s) {
    case StrongStatus::Strong: return "strong";
    case StrongStatus::NotStrong: return "not-strong";
    case StrongStatus::Indeterminate: return "indeterminate";
  }
  return "";
}

StrongStatus DetectionResult::strong_status(const Slope& s) const {
  if (!detected.contains(s)) return StrongStatus::NotStrong;
  for (const auto& e : exceptional) {
    if (e.slope == s) return e.status;
  }
  return StrongStatus::Strong;
}

void DetectionResult::set_status(const Slope& s, StrongStatus status, const std::string& reason) {
  for (auto& e : exceptional) {
    if (e.slope == s) {
      // NotStrong is definitive and is never weakened.
      if (e.status == StrongStatus::NotStrong) return;
      e.status = status;
      e.reason = reason;
      return;
    }
  }
  if (status != StrongStatus::Strong) exceptional.push_back({s, status, reason});
}

std::size_t v_count(const ConstraintFamily& family) {
  return static_cast<std::size_t>(std::count_if(family.arcs.begin(), family.arcs.end(),
                                                 [](const SlopeArc& a) { return a.contains_vertical(); }));
}

TauStats tau_stats(std::span<const Rational> taus, const std::set<std::size_t>& strong,
                   std::size_t cone_count, std::size_t boundary_count) {
  TauStats st;
  st.b0 = 0;
  for (std::size_t j = 0; j < taus.size(); ++j) {
    st.b0 -= floor_of(taus[j]);
    if (!is_integral(taus[j])) {
      ++st.r1;
    } else if (strong.count(j) != 0) {
      ++st.i0;
    } else {
      ++st.s0;
    }
  }
  const long nr1 = static_cast<long>(cone_count + boundary_count) - 1;
  st.m0 = st.b0 + st.i0 - nr1;
  st.m1 = st.b0 + st.s0 - 1;
  return st;
}

namespace {

struct Endpoints {
  std::vector<Rational> eta;
  std::vector<Rational> zeta;
};

Endpoints horizontal_endpoints(const ConstraintFamily& family) {
  Endpoints e;
  for (const auto& a : family.arcs) {
    if (a.is_full() || a.contains_vertical()) {
      throw std::invalid_argument("constraint arc is not horizontal");
    }
    e.eta.push_back(a.start().tau());
    e.zeta.push_back(a.end().tau());
  }
  return e;
}

void require_core_shape(const SeifertPiece& piece) {
  if (!piece.base_orientable) throw std::invalid_argument("core interval needs an orientable base");
  if (piece.cone_count() + piece.boundary_count < 3) {
    throw std::invalid_argument("core interval needs n + r >= 3");
  }
}

struct Slot {
  bool free = false;
  bool strict = true;
  Rational threshold;  // numerator / N must exceed (or reach) this
};

bool accepts(const Slot& s, const Integer& v, long long n) {
  if (s.free) return true;
  Rational x = make_rational(v, Integer(static_cast<long>(n)));
  return s.strict ? x > s.threshold : x >= s.threshold;
}

Integer least_accepted(const Slot& s, long long n) {
  if (s.free) return 1;
  Rational t = s.threshold * Rational(static_cast<long>(n));
  Integer v = s.strict ? Integer(floor_of(t) + 1) : ceil_of(t);
  return v < 1 ? Integer(1) : v;
}

// Largest N at which 1/N is still accepted; -1 when unbounded.
long long one_bound(const Slot& s) {
  if (s.free) return -1;
  Rational inv = 1 / s.threshold;
  Integer b = s.strict ? Integer(ceil_of(inv) - 1) : floor_of(inv);
  if (!b.fits_slong_p()) return -1;
  return b.get_si();
}

// Slots in order: cones, then constraints. An empty result means no
// refinement can exist on this side.
std::optional<std::vector<Slot>> build_slots(const SeifertPiece& piece, const ConstraintFamily& family,
                                             Side side) {
  std::vector<Slot> slots;
  for (const auto& g : piece.cones) {
    slots.push_back({false, true, side == Side::Low ? Rational(1 - g) : g});
  }
  Endpoints e = horizontal_endpoints(family);
  for (std::size_t j = 0; j < family.arcs.size(); ++j) {
    const Rational& t = side == Side::Low ? e.zeta[j] : e.eta[j];
    const bool in_j = family.strong.count(j) != 0;
    if (is_integral(t)) {
      if (!in_j) return std::nullopt;
      slots.push_back({true, true, Rational(0)});
      continue;
    }
    Rational f = frac_of(t);
    slots.push_back({false, in_j, side == Side::Low ? Rational(1 - f) : f});
  }
  return slots;
}

Integer gcd_of(long long a, long long b) { return Integer(static_cast<long>(std::gcd(a, b))); }

}  // namespace

std::pair<Integer, Integer> core_interval(const SeifertPiece& piece, const ConstraintFamily& family) {
  require_core_shape(piece);
  Endpoints e = horizontal_endpoints(family);
  const long nr1 = static_cast<long>(piece.cone_count() + piece.boundary_count) - 1;
  Integer cmin = -nr1;
  Integer cmax = -1;
  for (std::size_t j = 0; j < e.eta.size(); ++j) {
    const bool in_j = family.strong.count(j) != 0;
    cmin -= floor_of(e.zeta[j]);
    if (in_j && is_integral(e.zeta[j])) cmin += 1;
    cmax -= floor_of(e.eta[j]);
    if (!in_j && is_integral(e.eta[j])) cmax += 1;
  }
  return {cmin, cmax};
}

long long default_nmax(const SeifertPiece& piece, const ConstraintFamily& family) {
  Integer l = 1;
  for (const auto& g : piece.cones) l = lcm_of(l, g.get_den());
  Integer den = 1;
  for (const auto& a : family.arcs) {
    for (const auto& s : a.frontier()) {
      if (!s.is_vertical() && s.q() > den) den = s.q();
    }
  }
  Integer n = 2 * l * den;
  const long long cap = 1000000;
  return n.fits_slong_p() && n.get_si() < cap ? n.get_si() : cap;
}

std::optional<Refinement> jn_refine(const SeifertPiece& piece, const ConstraintFamily& family,
                                    Side side, long long nmax) {
  require_core_shape(piece);
  auto built = build_slots(piece, family, side);
  if (!built) return std::nullopt;
  const std::vector<Slot>& slots = *built;
  const std::size_t m = slots.size();  // the target is index m
  const std::size_t k = m + 1;

  std::vector<long long> bound(m);
  for (std::size_t s = 0; s < m; ++s) bound[s] = one_bound(slots[s]);

  struct Best {
    Rational value;
    long long n, a;
    std::size_t pa, pb;
  };
  std::optional<Best> best;

  for (long long n = 2; n <= nmax; ++n) {
    std::vector<std::size_t> rejecting;
    for (std::size_t s = 0; s < m; ++s) {
      if (bound[s] >= 0 && bound[s] < n) rejecting.push_back(s);
    }
    // Rejections only grow with N.
    if (rejecting.size() > 2) break;
    const Rational unit = make_rational(1, Integer(static_cast<long>(n)));
    if (best && rejecting.size() == m && best->value >= unit) break;

    for (std::size_t pa = 0; pa < k; ++pa) {
      for (std::size_t pb = 0; pb < k; ++pb) {
        if (pa == pb) continue;
        bool covered = std::all_of(rejecting.begin(), rejecting.end(),
                                   [&](std::size_t s) { return s == pa || s == pb; });
        if (!covered) continue;
        Integer lo = 1;
        Integer hi = to_integer(n - 1);
        if (pa < m) lo = std::max(lo, least_accepted(slots[pa], n));
        if (pb < m) hi = std::min(hi, Integer(to_integer(n) - least_accepted(slots[pb], n)));
        if (lo > hi) continue;
        const bool prefer_large = pa == m;
        long long lo_i = lo.get_si();
        long long hi_i = hi.get_si();
        long long a = -1;
        if (prefer_large) {
          for (long long x = hi_i; x >= lo_i; --x) {
            if (std::gcd(x, n) == 1) { a = x; break; }
          }
        } else {
          for (long long x = lo_i; x <= hi_i; ++x) {
            if (std::gcd(x, n) == 1) { a = x; break; }
          }
        }
        if (a < 0) continue;
        long long c = pa == m ? a : (pb == m ? n - a : 1);
        Rational value = make_rational(Integer(static_cast<long>(c)), Integer(static_cast<long>(n)));
        if (!best || value > best->value || (value == best->value && n == best->n && a < best->a)) {
          best = Best{value, n, a, pa, pb};
        }
      }
    }
  }
  if (!best) return std::nullopt;

  Refinement out;
  JNCertificate& cert = out.certificate;
  cert.side = side;
  cert.n = best->n;
  cert.a = best->a;
  auto numerator = [&](std::size_t s) -> Integer {
    if (s == best->pa) return Integer(static_cast<long>(best->a));
    if (s == best->pb) return Integer(static_cast<long>(best->n - best->a));
    return Integer(1);
  };
  for (std::size_t i = 0; i < piece.cone_count(); ++i) cert.cone_numerators.push_back(numerator(i));
  for (std::size_t j = piece.cone_count(); j < m; ++j) cert.boundary_numerators.push_back(numerator(j));
  cert.target_numerator = numerator(m);
  auto [cmin, cmax] = core_interval(piece, family);
  out.endpoint = side == Side::Low ? Rational(cmin - best->value) : Rational(cmax + best->value);
  return out;
}

bool validate_certificate(const SeifertPiece& piece, const ConstraintFamily& family,
                          const Refinement& refinement) {
  const JNCertificate& c = refinement.certificate;
  if (c.n < 2 || c.a <= 0 || c.a >= c.n || gcd_of(c.a, c.n) != 1) return false;
  if (c.cone_numerators.size() != piece.cone_count()) return false;
  if (c.boundary_numerators.size() != family.arcs.size()) return false;
  auto built = build_slots(piece, family, c.side);
  if (!built) return false;

  std::vector<Integer> got = c.cone_numerators;
  got.insert(got.end(), c.boundary_numerators.begin(), c.boundary_numerators.end());
  for (std::size_t s = 0; s < got.size(); ++s) {
    if (!accepts((*built)[s], got[s], c.n)) return false;
  }
  got.push_back(c.target_numerator);
  std::vector<Integer> want(got.size(), Integer(1));
  want[0] = to_integer(c.a);
  want[1] = to_integer(c.n - c.a);
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want) return false;

  auto [cmin, cmax] = core_interval(piece, family);
  Rational frac = make_rational(c.target_numerator, Integer(static_cast<long>(c.n)));
  Rational expect = c.side == Side::Low ? Rational(cmin - frac) : Rational(cmax + frac);
  return expect == refinement.endpoint;
}

Slope solid_torus_meridian(const SeifertPiece& piece) {
  if (!piece.is_solid_torus()) throw std::invalid_argument("piece is not a solid torus");
  if (piece.cones.empty()) return Slope::from_pair(0, 1);
  const Rational& g = piece.cones.front();
  return Slope::from_pair(g.get_num(), g.get_den());
}

GluingMatrix product_identification() { return GluingMatrix{1, 0, 0, -1}; }

namespace {

// Detected interval for a horizontal family, from the core interval and the
// two refinements.
DetectionResult horizontal_interval(const SeifertPiece& piece, const ConstraintFamily& family,
                                    long long nmax) {
  DetectionResult r;
  auto core = core_interval(piece, family);
  r.core = core;
  r.low = jn_refine(piece, family, Side::Low, nmax);
  r.high = jn_refine(piece, family, Side::High, nmax);
  Rational lo = r.low ? r.low->endpoint : Rational(core.first);
  Rational hi = r.high ? r.high->endpoint : Rational(core.second);
  r.detected = SlopeArc::tau_interval(lo, hi);
  return r;
}

ConstraintFamily with_arc(const ConstraintFamily& f, std::size_t j, SlopeArc arc) {
  ConstraintFamily out = f;
  out.arcs[j] = std::move(arc);
  return out;
}

}  // namespace

DetectionResult detect_relative(const SeifertPiece& piece, const ConstraintFamily& family,
                                std::optional<long long> nmax) {
  piece.check();
  family.check(piece);
  const Slope h = Slope::vertical();
  const std::size_t v = v_count(family);

  if (!piece.base_orientable) {
    DetectionResult r;
    r.vertical_count = v;
    if (piece.is_n2()) {
      r.branch = "N2";
      r.detected = SlopeArc::point(h);
      return r;
    }
    r.branch = "Q-base";
    r.detected = v == 0 ? SlopeArc::point(h) : SlopeArc::full();
    r.set_status(h, StrongStatus::NotStrong, "fibre slope of a non-orientable base");
    return r;
  }

  if (piece.is_solid_torus()) {
    DetectionResult r;
    r.branch = "solid-torus";
    r.detected = SlopeArc::point(solid_torus_meridian(piece));
    return r;
  }

  if (piece.is_torus_x_interval()) {
    DetectionResult r;
    r.branch = "product";
    r.vertical_count = v;
    r.detected = act_arc(product_identification(), family.arcs.front());
    return r;
  }

  if (v >= 2) {
    DetectionResult r;
    r.branch = "P-base v>=2";
    r.vertical_count = v;
    r.detected = SlopeArc::full();
    r.set_status(h, StrongStatus::NotStrong, "fibre slope");
    return r;
  }

  if (v == 0) {
    const long long bound = nmax.value_or(default_nmax(piece, family));
    DetectionResult r = horizontal_interval(piece, family, bound);
    r.branch = "P-base v=0";
    for (const auto& s : r.detected.frontier()) {
      r.set_status(s, StrongStatus::NotStrong, "endpoint of the detected interval");
    }
    return r;
  }

  // v == 1: split the arc through the fibre slope into its two rays.
  std::size_t j0 = 0;
  while (!family.arcs[j0].contains_vertical()) ++j0;
  const SlopeArc& sj = family.arcs[j0];
  DetectionResult r;
  r.branch = "P-base v=1";
  r.vertical_count = 1;
  if (sj.is_full()) {
    r.detected = SlopeArc::full();
    r.set_status(h, StrongStatus::NotStrong, "fibre slope");
    return r;
  }
  if (sj.is_point()) {
    r.detected = SlopeArc::point(h);
    r.set_status(h, StrongStatus::NotStrong, "fibre slope");
    return r;
  }

  std::optional<Rational> right;  // sup of the (-inf, R] part
  std::optional<Rational> left;   // inf of the [L, inf) part
  if (!sj.start().is_vertical()) {
    const Rational b = sj.start().tau();
    ConstraintFamily plus = with_arc(family, j0, SlopeArc::tau_interval(b, b + 1));
    const long long bound = nmax.value_or(default_nmax(piece, plus));
    auto core = core_interval(piece, plus);
    r.high = jn_refine(piece, plus, Side::High, bound);
    right = r.high ? r.high->endpoint : Rational(core.second);
  }
  if (!sj.end().is_vertical()) {
    const Rational a = sj.end().tau();
    ConstraintFamily minus = with_arc(family, j0, SlopeArc::tau_interval(a - 1, a));
    const long long bound = nmax.value_or(default_nmax(piece, minus));
    auto core = core_interval(piece, minus);
    r.low = jn_refine(piece, minus, Side::Low, bound);
    left = r.low ? r.low->endpoint : Rational(core.first);
  }
  if (left && right) {
    r.detected = *left <= *right ? SlopeArc::full()
                                 : SlopeArc::arc(Slope::from_tau(*left), Slope::from_tau(*right));
  } else if (right) {
    r.detected = SlopeArc::arc(h, Slope::from_tau(*right));
  } else {
    r.detected = SlopeArc::arc(Slope::from_tau(*left), h);
  }
  r.set_status(h, StrongStatus::NotStrong, "fibre slope");
  for (const auto& s : r.detected.frontier()) {
    if (!s.is_vertical()) {
      r.set_status(s, StrongStatus::Indeterminate, "endpoint of an arc through the fibre slope");
    }
  }
  return r;
}

}  // namespace gmslope
