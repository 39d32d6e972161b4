#pragma once

// Brute-force cross-checks for the closed forms in seifert.hpp.

#include "gmslope/seifert.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gmslope {

struct GridSpec {
  long denominator = 24;
  // Sample points of each constraint interval [eta_j, zeta_j].
  std::vector<std::vector<Rational>> samples;
};

// Multiples of 1/d inside each interval plus its endpoints. Each integer
// also brings the two points at distance 1/(2d) from it.
GridSpec make_grid(const ConstraintFamily& family, long denominator);

// Least common multiple of the constraint endpoint denominators.
long endpoint_lcm(const ConstraintFamily& family);

// (min m_0, max m_1) over grid tuples with i_0 = 0.
std::pair<Integer, Integer> grid_union(const SeifertPiece& piece, const ConstraintFamily& family,
                                       const GridSpec& spec);
std::pair<Integer, Integer> grid_union(const SeifertPiece& piece, const ConstraintFamily& family,
                                       long denominator);

// First certificate in (N, A, slot pair) order whose endpoint equals target.
std::optional<JNCertificate> jn_exhaustive(const SeifertPiece& piece, const ConstraintFamily& family,
                                           Side side, const Rational& target, long long nmax);

// Extremal endpoint over every certificate with N <= nmax, by enumeration.
std::optional<Refinement> jn_extremal(const SeifertPiece& piece, const ConstraintFamily& family, Side side,
                                      long long nmax);

}  // namespace gmslope
