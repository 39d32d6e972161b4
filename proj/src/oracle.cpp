#include "gmslope/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gmslope {

namespace {

std::pair<Rational, Rational> bounds(const SlopeArc& a) {
  if (a.is_empty() || a.is_full() || a.contains_vertical()) {
    throw std::invalid_argument("grid needs horizontal constraint arcs");
  }
  return {a.start().tau(), a.end().tau()};
}

}  // namespace

long endpoint_lcm(const ConstraintFamily& family) {
  Integer l = 1;
  for (const auto& a : family.arcs) {
    for (const auto& s : a.frontier()) {
      if (!s.is_vertical()) l = lcm_of(l, s.q());
    }
  }
  return l.get_si();
}

GridSpec make_grid(const ConstraintFamily& family, long denominator) {
  if (denominator < 1) throw std::invalid_argument("grid denominator must be positive");
  GridSpec spec;
  spec.denominator = denominator;
  const Rational step = make_rational(1, Integer(denominator));
  const Rational half = step / 2;
  for (const auto& a : family.arcs) {
    auto [lo, hi] = bounds(a);
    std::set<Rational> pts{lo, hi};
    for (Integer k = ceil_of(lo * denominator); Rational(k) <= hi * denominator; ++k) {
      pts.insert(make_rational(k, Integer(denominator)));
    }
    for (Integer k = ceil_of(lo); Rational(k) <= hi; ++k) {
      for (const Rational& x : {Rational(Rational(k) - half), Rational(k), Rational(Rational(k) + half)}) {
        if (lo <= x && x <= hi) pts.insert(x);
      }
    }
    spec.samples.emplace_back(pts.begin(), pts.end());
  }
  return spec;
}

std::pair<Integer, Integer> grid_union(const SeifertPiece& piece, const ConstraintFamily& family,
                                       const GridSpec& spec) {
  // m_0 and m_1 depend only on floors and integrality, so one representative
  // per class suffices.
  std::vector<std::vector<Rational>> reps;
  for (const auto& s : spec.samples) {
    std::map<std::pair<Integer, bool>, Rational> cls;
    for (const auto& x : s) cls.emplace(std::make_pair(floor_of(x), is_integral(x)), x);
    std::vector<Rational> r;
    for (const auto& [_, x] : cls) r.push_back(x);
    reps.push_back(std::move(r));
  }
  std::optional<Integer> lo, hi;
  std::vector<std::size_t> idx(reps.size(), 0);
  std::vector<Rational> tuple(reps.size());
  for (;;) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (reps[j].empty()) throw std::invalid_argument("empty grid");
      tuple[j] = reps[j][idx[j]];
    }
    TauStats st = tau_stats(tuple, family.strong, piece.cone_count(), piece.boundary_count);
    if (st.i0 == 0) {
      if (!lo || st.m0 < *lo) lo = st.m0;
      if (!hi || st.m1 > *hi) hi = st.m1;
    }
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == reps[j].size()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  if (!lo) throw std::invalid_argument("no grid tuple avoids integral strong coordinates");
  return {*lo, *hi};
}

std::pair<Integer, Integer> grid_union(const SeifertPiece& piece, const ConstraintFamily& family,
                                       long denominator) {
  return grid_union(piece, family, make_grid(family, denominator));
}

namespace {

// Literal form of the realizability conditions for one candidate.
struct Conditions {
  const SeifertPiece& piece;
  const ConstraintFamily& family;
  Side side;
  Integer cmin, cmax;
  std::vector<Rational> at;  // zeta_* (low side) or eta_* (high side)
  bool possible = true;

  Conditions(const SeifertPiece& p, const ConstraintFamily& f, Side s) : piece(p), family(f), side(s) {
    auto [lo, hi] = grid_union(p, f, std::max(2L, 2 * endpoint_lcm(f)));
    cmin = lo;
    cmax = hi;
    for (std::size_t j = 0; j < f.arcs.size(); ++j) {
      auto [eta, zeta] = bounds(f.arcs[j]);
      at.push_back(s == Side::Low ? zeta : eta);
      if (is_integral(at.back()) && f.strong.count(j) == 0) possible = false;
    }
  }

  std::size_t slots() const { return piece.cone_count() + family.arcs.size() + 1; }

  bool holds(const std::vector<Integer>& num, long long n) const {
    const Rational nn(static_cast<long>(n));
    for (std::size_t i = 0; i < piece.cone_count(); ++i) {
      const Rational x = Rational(num[i]) / nn;
      const Rational& g = piece.cones[i];
      if (side == Side::Low ? !(1 - x < g) : !(x > g)) return false;
    }
    for (std::size_t j = 0; j < family.arcs.size(); ++j) {
      const Rational x = Rational(num[piece.cone_count() + j]) / nn;
      const Rational& t = at[j];
      const bool strong = family.strong.count(j) != 0;
      if (is_integral(t)) continue;  // a strong integral coordinate imposes nothing
      const Rational f = t - Rational(floor_of(t));
      if (side == Side::Low) {
        if (strong ? !(1 - x < f) : !(1 - x <= f)) return false;
      } else {
        if (strong ? !(x > f) : !(x >= f)) return false;
      }
    }
    return true;
  }

  Rational endpoint(const Integer& c, long long n) const {
    const Rational x = Rational(c) / Rational(static_cast<long>(n));
    return side == Side::Low ? Rational(cmin - x) : Rational(cmax + x);
  }
};

template <typename Visit>
void enumerate(const Conditions& cond, long long nmax, Visit&& visit) {
  const std::size_t k = cond.slots();
  std::vector<Integer> num(k);
  for (long long n = 2; n <= nmax; ++n) {
    for (long long a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      for (std::size_t pa = 0; pa < k; ++pa) {
        for (std::size_t pb = 0; pb < k; ++pb) {
          if (pa == pb) continue;
          std::fill(num.begin(), num.end(), Integer(1));
          num[pa] = static_cast<long>(a);
          num[pb] = static_cast<long>(n - a);
          if (!cond.holds(num, n)) continue;
          if (!visit(num, n, a)) return;
        }
      }
    }
  }
}

JNCertificate make_cert(const Conditions& cond, const std::vector<Integer>& num, long long n, long long a) {
  JNCertificate c;
  c.side = cond.side;
  c.n = n;
  c.a = a;
  const std::size_t nc = cond.piece.cone_count();
  c.cone_numerators.assign(num.begin(), num.begin() + static_cast<long>(nc));
  c.boundary_numerators.assign(num.begin() + static_cast<long>(nc), num.end() - 1);
  c.target_numerator = num.back();
  return c;
}

}  // namespace

std::optional<JNCertificate> jn_exhaustive(const SeifertPiece& piece, const ConstraintFamily& family,
                                           Side side, const Rational& target, long long nmax) {
  Conditions cond(piece, family, side);
  if (!cond.possible) return std::nullopt;
  std::optional<JNCertificate> found;
  enumerate(cond, nmax, [&](const std::vector<Integer>& num, long long n, long long a) {
    if (cond.endpoint(num.back(), n) != target) return true;
    found = make_cert(cond, num, n, a);
    return false;
  });
  return found;
}

std::optional<Refinement> jn_extremal(const SeifertPiece& piece, const ConstraintFamily& family, Side side,
                                      long long nmax) {
  Conditions cond(piece, family, side);
  if (!cond.possible) return std::nullopt;
  std::optional<Refinement> best;
  enumerate(cond, nmax, [&](const std::vector<Integer>& num, long long n, long long a) {
    const Rational e = cond.endpoint(num.back(), n);
    const bool better = !best || (side == Side::Low ? e < best->endpoint : e > best->endpoint);
    if (better) best = Refinement{e, make_cert(cond, num, n, a)};
    return true;
  });
  return best;
}

}  // namespace gmslope
