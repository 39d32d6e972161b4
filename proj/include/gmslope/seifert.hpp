#pragma once

// Relative slope detection for a single Seifert piece.
//
// All coordinates here are taken in the normalized tau-frames of the piece:
// every cone invariant gamma_i lies in (0, 1) and the section classes h'_j of
// the boundary tori satisfy sum_i x_i = sum_j h'_j (section obstruction zero).
// The last boundary torus T_r is the target; constraint arcs live on
// T_1 .. T_{r-1}.

#include "gmslope/arith.hpp"
#include "gmslope/slope.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gmslope {

struct SeifertPiece {
  bool base_orientable = true;
  int crosscaps = 0;             // > 0 iff the base is non-orientable
  std::vector<Rational> cones;   // gamma_i = beta_i / a_i in (0, 1)
  std::size_t boundary_count = 1;

  std::size_t cone_count() const { return cones.size(); }
  bool is_n2() const;                  // Moebius band base, no cone points, one boundary
  bool is_solid_torus() const;         // disk base with at most one cone point
  bool is_torus_x_interval() const;    // annulus base, no cone points
  bool is_cable_space() const;         // annulus base, one cone point
  // Throws std::invalid_argument when the invariants fail.
  void check() const;
};

struct ConstraintFamily {
  std::vector<SlopeArc> arcs;     // S_1 .. S_{r-1}
  std::set<std::size_t> strong;   // J, zero-based indices into arcs

  void check(const SeifertPiece& piece) const;
};

struct TauStats {
  long r1 = 0;
  long s0 = 0;
  long i0 = 0;
  Integer b0;
  Integer m0;
  Integer m1;
};

enum class Side { Low, High };

// Realizability witness for an endpoint just beyond the core interval. The
// values A_i/N, B_j/N, C/N are a permutation of (A/N, 1 - A/N, 1/N, ..., 1/N).
struct JNCertificate {
  Side side = Side::Low;
  long long n = 0;
  long long a = 0;
  std::vector<Integer> cone_numerators;      // A_i
  std::vector<Integer> boundary_numerators;  // B_j, one per constraint torus
  Integer target_numerator;                  // C
};

struct Refinement {
  Rational endpoint;  // eta below c_min, or zeta above c_max
  JNCertificate certificate;
};

enum class StrongStatus { Strong, NotStrong, Indeterminate };

struct ExceptionalSlope {
  Slope slope;
  StrongStatus status;
  std::string reason;
};

struct DetectionResult {
  SlopeArc detected = SlopeArc::empty();
  // Every detected slope that is not known to be strongly detected.
  std::vector<ExceptionalSlope> exceptional;
  std::string branch;
  std::size_t vertical_count = 0;
  std::optional<std::pair<Integer, Integer>> core;
  std::optional<Refinement> low;
  std::optional<Refinement> high;

  StrongStatus strong_status(const Slope& s) const;
  void set_status(const Slope& s, StrongStatus status, const std::string& reason);
};

std::string to_string(StrongStatus s);

std::size_t v_count(const ConstraintFamily& family);

// Precondition: every tau is finite (vertical coordinates already removed).
TauStats tau_stats(std::span<const Rational> taus, const std::set<std::size_t>& strong,
                   std::size_t cone_count, std::size_t boundary_count);

// [c_min, c_max] for a P-base piece with n + r >= 3 and horizontal,
// finite constraint arcs. Throws std::invalid_argument otherwise.
std::pair<Integer, Integer> core_interval(const SeifertPiece& piece, const ConstraintFamily& family);

// Default search bound: 2 * lcm(a_i) * (largest denominator among the finite
// constraint endpoints).
long long default_nmax(const SeifertPiece& piece, const ConstraintFamily& family);

// Extremal refined endpoint below c_min (Low) or above c_max (High), over all
// certificates with N <= nmax. Ties go to the smallest N, then the smallest A.
std::optional<Refinement> jn_refine(const SeifertPiece& piece, const ConstraintFamily& family,
                                    Side side, long long nmax);
inline std::optional<Refinement> jn_refine_low(const SeifertPiece& piece,
                                               const ConstraintFamily& family, long long nmax) {
  return jn_refine(piece, family, Side::Low, nmax);
}
inline std::optional<Refinement> jn_refine_high(const SeifertPiece& piece,
                                                const ConstraintFamily& family, long long nmax) {
  return jn_refine(piece, family, Side::High, nmax);
}

// Re-checks the permutation shape and the three realizability conditions.
bool validate_certificate(const SeifertPiece& piece, const ConstraintFamily& family,
                          const Refinement& refinement);

// Detected and strongly detected slopes on the target torus.
DetectionResult detect_relative(const SeifertPiece& piece, const ConstraintFamily& family,
                                std::optional<long long> nmax = std::nullopt);

// Meridian of a solid-torus piece in its normalized frame.
Slope solid_torus_meridian(const SeifertPiece& piece);

// The identification H_1(T_1) -> H_1(T_2) of a product piece T^2 x I.
GluingMatrix product_identification();

}  // namespace gmslope
