#include "gmslope/report.hpp"

#include <sstream>

namespace gmslope {

using nlohmann::json;

json slope_json(const Slope& s) { return {{"slope", s.str()}, {"tau", s.tau_str()}}; }

json arc_json(const SlopeArc& a) {
  json j;
  switch (a.kind()) {
    case SlopeArc::Kind::Empty: j["kind"] = "empty"; break;
    case SlopeArc::Kind::Full: j["kind"] = "full"; break;
    case SlopeArc::Kind::Point:
      j["kind"] = "point";
      j["point"] = slope_json(a.start());
      break;
    case SlopeArc::Kind::Arc:
      j["kind"] = "arc";
      j["start"] = slope_json(a.start());
      j["end"] = slope_json(a.end());
      j["through_fibre"] = a.contains_vertical();
      break;
  }
  return j;
}

json refinement_json(const Refinement& r) {
  const JNCertificate& c = r.certificate;
  json cones = json::array();
  for (const auto& x : c.cone_numerators) cones.push_back(x.get_str());
  json bnd = json::array();
  for (const auto& x : c.boundary_numerators) bnd.push_back(x.get_str());
  return {{"endpoint", to_string(r.endpoint)},
          {"N", c.n},
          {"A", c.a},
          {"cone_numerators", cones},
          {"boundary_numerators", bnd},
          {"target_numerator", c.target_numerator.get_str()}};
}

json detection_json(const DetectionResult& d) {
  json j;
  j["detected"] = arc_json(d.detected);
  j["branch"] = d.branch;
  j["vertical_count"] = d.vertical_count;
  json ex = json::array();
  for (const auto& e : d.exceptional) {
    json x = slope_json(e.slope);
    x["status"] = to_string(e.status);
    x["reason"] = e.reason;
    ex.push_back(std::move(x));
  }
  j["exceptional"] = ex;
  if (d.core) j["core"] = {d.core->first.get_str(), d.core->second.get_str()};
  j["low_refinement"] = d.low ? refinement_json(*d.low) : json(nullptr);
  j["high_refinement"] = d.high ? refinement_json(*d.high) : json(nullptr);
  return j;
}

json homology_json(const HomologySummary& h) {
  json t = json::array();
  for (const auto& x : h.torsion) t.push_back(x.get_str());
  return {{"betti", h.betti}, {"torsion", t}};
}

json longitude_json(const PlumbingGraph& g, const LongitudeResult& l) {
  json j = slope_json(l.slope);
  j["torus"] = g.torus_id(l.torus);
  j["order"] = l.order.get_str();
  return j;
}

json degenerate_json(const DegenerateReport& r) {
  return {{"degenerate", r.degenerate},
          {"predicted", r.predicted},
          {"consistent", r.consistent},
          {"branch", r.branch},
          {"explanation", r.explanation}};
}

json verdict_json(const CtfVerdict& v) {
  json j;
  j["admits"] = v.admits;
  j["split_edge"] = "e" + std::to_string(v.split_edge);
  j["detected_from_side"] = arc_json(v.side_from);
  j["detected_to_side"] = arc_json(v.side_to);
  json w = json::object();
  if (v.witness) {
    for (const auto& [id, s] : v.witness->slopes) w[id] = s.str();
  }
  j["witness"] = w;
  json tags = json::object();
  for (const auto& [id, t] : v.piece_tags) tags[id] = to_string(t);
  j["piece_tags"] = tags;
  j["lspace_note"] = v.note;
  return j;
}

std::string arc_text(const SlopeArc& a) {
  auto both = [](const Slope& s) { return s.str() + " (tau " + s.tau_str() + ")"; };
  switch (a.kind()) {
    case SlopeArc::Kind::Empty: return "empty";
    case SlopeArc::Kind::Full: return "every slope";
    case SlopeArc::Kind::Point: return "{" + both(a.start()) + "}";
    case SlopeArc::Kind::Arc: break;
  }
  return "[" + both(a.start()) + " -> " + both(a.end()) + "]" +
         (a.contains_vertical() ? " through the fibre slope" : "");
}

std::string detection_text(const DetectionResult& d) {
  std::ostringstream os;
  os << "detected: " << arc_text(d.detected) << "\n";
  os << "branch: " << d.branch << "\n";
  if (d.core) os << "core interval: [" << d.core->first << ", " << d.core->second << "]\n";
  if (d.low) os << "low refinement: " << to_string(d.low->endpoint) << " (N = " << d.low->certificate.n << ")\n";
  if (d.high) os << "high refinement: " << to_string(d.high->endpoint) << " (N = " << d.high->certificate.n << ")\n";
  if (d.exceptional.empty()) {
    os << "every detected slope is strongly detected\n";
  } else {
    os << "not strongly detected (or undetermined):\n";
    for (const auto& e : d.exceptional) {
      os << "  " << e.slope.str() << " (tau " << e.slope.tau_str() << "): " << to_string(e.status) << ", "
         << e.reason << "\n";
    }
  }
  return os.str();
}

std::string verdict_text(const CtfVerdict& v) {
  std::ostringstream os;
  os << "split edge: e" << v.split_edge << "\n";
  os << "D(U): " << arc_text(v.side_from) << "\n";
  os << "D(V): " << arc_text(v.side_to) << "\n";
  os << "admits: " << (v.admits ? "yes" : "no") << "\n";
  if (v.witness) {
    os << "witness:\n";
    for (const auto& [id, s] : v.witness->slopes) os << "  " << id << " = " << s.str() << "\n";
    os << "piece tags:\n";
    for (const auto& [id, t] : v.piece_tags) os << "  " << id << ": " << to_string(t) << "\n";
  }
  os << v.note << "\n";
  return os.str();
}

}  // namespace gmslope
