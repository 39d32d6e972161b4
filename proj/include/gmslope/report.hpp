#pragma once

// JSON and text renderings of results. Every slope is shown both as a
// homology pair "p/q" and as an exact tau value ("inf" for the fibre).

#include "gmslope/ctf.hpp"
#include "gmslope/graph.hpp"
#include "gmslope/seifert.hpp"

#include "json.hpp"

#include <string>

namespace gmslope {

inline constexpr int kReportSchema = 1;

nlohmann::json slope_json(const Slope& s);
nlohmann::json arc_json(const SlopeArc& a);
nlohmann::json refinement_json(const Refinement& r);
nlohmann::json detection_json(const DetectionResult& d);
nlohmann::json homology_json(const HomologySummary& h);
nlohmann::json longitude_json(const PlumbingGraph& g, const LongitudeResult& l);
nlohmann::json degenerate_json(const DegenerateReport& r);
nlohmann::json verdict_json(const CtfVerdict& v);

std::string arc_text(const SlopeArc& a);
std::string detection_text(const DetectionResult& d);
std::string verdict_text(const CtfVerdict& v);

}  // namespace gmslope
