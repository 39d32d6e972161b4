#pragma once

// Detection over a JSJ tree and the taut-foliation decision for closed
// graph manifolds.

#include "gmslope/graph.hpp"
#include "gmslope/seifert.hpp"
#include "gmslope/slope.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gmslope {

// Memoized detection for the rooted subtrees of a normalized graph. Results
// are expressed in the frame of each subtree's target torus.
class TreeDetector {
 public:
  explicit TreeDetector(PlumbingGraph normalized, std::optional<long long> nmax = std::nullopt);

  const PlumbingGraph& graph() const { return g_; }
  const DetectionResult& detect(const SubtreeRef& s);
  const LongitudeResult& longitude(const SubtreeRef& s);
  // Child detected sets carried into the parent frame, in boundary order.
  std::vector<SlopeArc> child_arcs(const SubtreeRef& s);
  // Relative detection of the piece alone with point constraints on the
  // child tori (parent frame), in the target frame.
  DetectionResult local(const SubtreeRef& s, const std::vector<Slope>& child_slopes) const;

 private:
  DetectionResult local_family(const SubtreeRef& s, const ConstraintFamily& family) const;
  void apply_tree_exceptions(const SubtreeRef& s, DetectionResult& r);

  PlumbingGraph g_;
  std::optional<long long> nmax_;
  std::map<std::pair<std::size_t, std::size_t>, DetectionResult> detected_;
  std::map<std::pair<std::size_t, std::size_t>, LongitudeResult> longitudes_;
};

// Detected set on the dangling torus of a solid-torus graph, in the input
// frame of that torus. Throws std::domain_error for the closed role.
DetectionResult detect_tree(const PlumbingGraph& g, std::optional<long long> nmax = std::nullopt);

struct DegenerateReport {
  bool degenerate = false;  // detect_tree returned a single slope
  bool predicted = false;   // the branch conditions say it should
  bool consistent = false;  // the two agree and a single slope equals the longitude
  std::string branch;
  std::string explanation;
};

DegenerateReport check_degenerate(const PlumbingGraph& g, std::optional<long long> nmax = std::nullopt);

// Torus id ("e<k>" for edge k in its `from` frame, "<piece>.<index>" for a
// dangling torus) to slope, in the input frames of the graph.
struct SlopeAssignment {
  std::map<std::string, Slope> slopes;
};

enum class PieceTag { VerticalAnnulus, Fibration, HorizontalNonFibred };
std::string to_string(PieceTag t);

// Slopes are in the normalized frame of the piece; the target is the last
// boundary torus.
PieceTag classify_piece(const SeifertPiece& piece, const std::vector<Slope>& constraints,
                        const Slope& target);

// Gluing coherent extension of a detected slope on the dangling torus of a
// solid-torus graph. Throws std::invalid_argument if the target is not detected.
SlopeAssignment extract_witness(const PlumbingGraph& g, const Slope& target,
                                std::optional<long long> nmax = std::nullopt);

// Re-checks every piece of the assignment by relative detection, with each
// piece rooted toward the split edge (closed role) or the dangling torus.
// Returns one message per failing piece.
std::vector<std::string> verify_assignment(const PlumbingGraph& g, const SlopeAssignment& a,
                                           std::optional<std::size_t> split_edge = std::nullopt,
                                           std::optional<long long> nmax = std::nullopt);

struct CtfVerdict {
  bool admits = false;
  std::optional<SlopeAssignment> witness;
  std::map<std::string, PieceTag> piece_tags;
  std::string note;
  std::size_t split_edge = 0;
  SlopeArc side_from = SlopeArc::empty();  // D(U) in the `from` frame of the split edge
  SlopeArc side_to = SlopeArc::empty();    // D(V) carried into the same frame
};

// Throws std::domain_error unless the graph is closed with b_1 = 0, and
// std::invalid_argument for a graph without edges.
CtfVerdict decide_ctf(const PlumbingGraph& g, std::size_t split_edge = 0,
                      std::optional<long long> nmax = std::nullopt);

}  // namespace gmslope
